"""Labeled tensor datasets: container, on-disk format, splits, synthesis.

On disk a dataset is a directory holding three files:

* ``manifest.json``: version, dims, count, n_classes, dtype tag,
  data_file, label_file.
* ``data.bin``: `count` concatenated float64 little-endian tensors, each
  flattened with the first index varying fastest (Fortran order).
* ``labels.csv``: one integer class id per line, 1-based.

All randomness (splits, synthetic data) goes through numpy's default
PCG64 ``Generator`` seeded explicitly, so results are reproducible from
the seed alone.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "DatasetFormatError",
    "LabeledDataset",
    "DatasetManifest",
    "SynthSpec",
    "load_dataset",
    "save_dataset",
    "stratified_split",
    "synth_generate",
]

MANIFEST_VERSION = 1
DTYPE_TAG = "float64-le"
MANIFEST_NAME = "manifest.json"


class DatasetFormatError(ValueError):
    """A dataset directory violates the documented file format."""


@dataclass(frozen=True)
class LabeledDataset:
    """N same-shaped float64 tensors with 1-based integer class labels."""

    samples: np.ndarray  # (count, *dims)
    labels: np.ndarray  # (count,) ints in 1..n_classes
    n_classes: int

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.float64)
        labels = np.asarray(self.labels, dtype=np.int64)
        if samples.ndim < 2:
            raise ValueError("samples must be an array of shape (count, *dims)")
        if labels.ndim != 1 or labels.shape[0] != samples.shape[0]:
            raise ValueError(
                f"got {labels.size} labels for {samples.shape[0]} samples"
            )
        if self.n_classes < 1:
            raise ValueError(f"n_classes must be >= 1, got {self.n_classes}")
        if labels.size and (labels.min() < 1 or labels.max() > self.n_classes):
            raise ValueError(
                f"labels must lie in 1..{self.n_classes}, found range "
                f"{labels.min()}..{labels.max()}"
            )
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "labels", labels)

    @property
    def count(self) -> int:
        return self.samples.shape[0]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(self.samples.shape[1:])

    def class_indices(self, label: int) -> np.ndarray:
        return np.flatnonzero(self.labels == label)

    def class_counts(self) -> np.ndarray:
        """Per-class sample counts for classes 1..n_classes."""
        return np.bincount(self.labels, minlength=self.n_classes + 1)[1:]


@dataclass(frozen=True)
class DatasetManifest:
    version: int
    dims: tuple[int, ...]
    count: int
    n_classes: int
    dtype: str
    data_file: str
    label_file: str

    def to_json_dict(self) -> dict:
        return {
            "version": self.version,
            "dims": list(self.dims),
            "count": self.count,
            "n_classes": self.n_classes,
            "dtype": self.dtype,
            "data_file": self.data_file,
            "label_file": self.label_file,
        }


@dataclass(frozen=True)
class SynthSpec:
    """Recipe for a synthetic dataset of Gaussian class clusters.

    Each class draws a mean tensor with independent Normal(0,
    class_mean_scale^2) entries; samples add independent Normal(0,
    noise_sigma^2) entry noise to their class mean. noise_sigma = 0 makes
    every sample equal to its class mean.
    """

    dims: tuple[int, ...]
    n_classes: int
    samples_per_class: int
    class_mean_scale: float = 1.0
    noise_sigma: float = 0.1
    seed: int = 0

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 1 for d in dims):
            raise ValueError(f"dims must be positive integers, got {self.dims}")
        if self.n_classes < 1:
            raise ValueError(f"n_classes must be >= 1, got {self.n_classes}")
        if self.samples_per_class < 1:
            raise ValueError(
                f"samples_per_class must be >= 1, got {self.samples_per_class}"
            )
        if not self.class_mean_scale > 0:
            raise ValueError(
                f"class_mean_scale must be > 0, got {self.class_mean_scale}"
            )
        if self.noise_sigma < 0:
            raise ValueError(f"noise_sigma must be >= 0, got {self.noise_sigma}")
        object.__setattr__(self, "dims", dims)


def _flat_fortran(samples: np.ndarray) -> np.ndarray:
    """Concatenate per-sample Fortran-order flattenings of (N, *dims)."""
    return np.moveaxis(samples, 0, -1).ravel(order="F")


def save_dataset(data: LabeledDataset, path, force: bool = False) -> DatasetManifest:
    """Write `data` to directory `path` in the documented format.

    Refuses to overwrite an existing dataset unless `force` is set. The
    manifest is written last so a complete manifest marks a complete
    directory.
    """
    root = Path(path)
    manifest_path = root / MANIFEST_NAME
    if manifest_path.exists() and not force:
        raise FileExistsError(
            f"refusing to overwrite existing dataset at {root} (use force)"
        )
    root.mkdir(parents=True, exist_ok=True)
    manifest = DatasetManifest(
        version=MANIFEST_VERSION,
        dims=data.dims,
        count=data.count,
        n_classes=data.n_classes,
        dtype=DTYPE_TAG,
        data_file="data.bin",
        label_file="labels.csv",
    )
    raw = _flat_fortran(data.samples).astype("<f8", copy=False)
    (root / manifest.data_file).write_bytes(raw.tobytes())
    lines = "\n".join(str(int(label)) for label in data.labels)
    (root / manifest.label_file).write_text(lines + "\n" if lines else "")
    manifest_path.write_text(json.dumps(manifest.to_json_dict(), indent=2) + "\n")
    return manifest


def _read_manifest(root: Path) -> DatasetManifest:
    manifest_path = root / MANIFEST_NAME
    if not manifest_path.exists():
        raise FileNotFoundError(f"{root}: missing {MANIFEST_NAME}")
    try:
        doc = json.loads(manifest_path.read_text())
    except json.JSONDecodeError as exc:
        raise DatasetFormatError(f"{manifest_path}: invalid JSON: {exc}") from exc
    for key in ("version", "dims", "count", "n_classes", "dtype", "data_file", "label_file"):
        if key not in doc:
            raise DatasetFormatError(f"{manifest_path}: missing key {key!r}")
    if doc["version"] != MANIFEST_VERSION:
        raise DatasetFormatError(
            f"{manifest_path}: unsupported version {doc['version']!r}, "
            f"expected {MANIFEST_VERSION}"
        )
    if doc["dtype"] != DTYPE_TAG:
        raise DatasetFormatError(
            f"{manifest_path}: unsupported dtype tag {doc['dtype']!r}, "
            f"expected {DTYPE_TAG!r}"
        )
    dims = tuple(int(d) for d in doc["dims"])
    if not dims or any(d < 1 for d in dims):
        raise DatasetFormatError(f"{manifest_path}: invalid dims {doc['dims']}")
    return DatasetManifest(
        version=int(doc["version"]),
        dims=dims,
        count=int(doc["count"]),
        n_classes=int(doc["n_classes"]),
        dtype=str(doc["dtype"]),
        data_file=str(doc["data_file"]),
        label_file=str(doc["label_file"]),
    )


def _read_labels(path: Path, count: int, n_classes: int) -> np.ndarray:
    if not path.exists():
        raise FileNotFoundError(f"missing label file {path}")
    lines = path.read_text().splitlines()
    rows = [line.strip() for line in lines if line.strip()]
    if len(rows) != count:
        raise DatasetFormatError(
            f"{path}: has {len(rows)} labels, manifest expects {count}"
        )
    labels = np.empty(count, dtype=np.int64)
    for i, row in enumerate(rows):
        try:
            value = int(row)
        except ValueError as exc:
            raise DatasetFormatError(
                f"{path}: line {i + 1}: not an integer: {row!r}"
            ) from exc
        if not 1 <= value <= n_classes:
            raise DatasetFormatError(
                f"{path}: line {i + 1}: label {value} outside 1..{n_classes}"
            )
        labels[i] = value
    return labels


def load_dataset(path) -> LabeledDataset:
    """Load a dataset directory, validating manifest, bytes and labels."""
    root = Path(path)
    manifest = _read_manifest(root)
    data_path = root / manifest.data_file
    if not data_path.exists():
        raise FileNotFoundError(f"missing data file {data_path}")
    raw = data_path.read_bytes()
    expected = manifest.count * math.prod(manifest.dims) * 8
    if len(raw) != expected:
        raise DatasetFormatError(
            f"{data_path}: size mismatch: expected {expected} bytes, "
            f"found {len(raw)}"
        )
    flat = np.frombuffer(raw, dtype="<f8").astype(np.float64)
    stacked = flat.reshape(manifest.dims + (manifest.count,), order="F")
    samples = np.ascontiguousarray(np.moveaxis(stacked, -1, 0))
    labels = _read_labels(root / manifest.label_file, manifest.count, manifest.n_classes)
    return LabeledDataset(samples=samples, labels=labels, n_classes=manifest.n_classes)


def stratified_split(
    data: LabeledDataset, fraction: float, seed: int
) -> tuple[LabeledDataset, LabeledDataset]:
    """Split per class: ceil(fraction * n_i) samples to train, rest to test.

    Sampling is without replacement from each class using a PCG64
    generator seeded with `seed`; both halves keep the original sample
    order. The same seed always produces the same split.
    """
    if not 0.0 < fraction < 1.0:
        raise ValueError(f"fraction must lie strictly in (0, 1), got {fraction}")
    rng = np.random.default_rng(seed)
    train_mask = np.zeros(data.count, dtype=bool)
    for label in range(1, data.n_classes + 1):
        idx = data.class_indices(label)
        if idx.size == 0:
            raise ValueError(f"class {label} has no samples to split")
        n_train = math.ceil(fraction * idx.size)
        chosen = rng.permutation(idx)[:n_train]
        train_mask[chosen] = True
    train = LabeledDataset(
        samples=data.samples[train_mask],
        labels=data.labels[train_mask],
        n_classes=data.n_classes,
    )
    test = LabeledDataset(
        samples=data.samples[~train_mask],
        labels=data.labels[~train_mask],
        n_classes=data.n_classes,
    )
    return train, test


def synth_generate(spec: SynthSpec) -> LabeledDataset:
    """Generate Gaussian class clusters per `spec`, deterministic in seed.

    Draw order is fixed: for each class in id order, first the class
    mean, then the sample noise block.
    """
    rng = np.random.default_rng(spec.seed)
    per_class = spec.samples_per_class
    count = spec.n_classes * per_class
    samples = np.empty((count, *spec.dims), dtype=np.float64)
    labels = np.empty(count, dtype=np.int64)
    for c in range(spec.n_classes):
        mean = rng.normal(0.0, spec.class_mean_scale, size=spec.dims)
        block = slice(c * per_class, (c + 1) * per_class)
        noise = rng.normal(0.0, spec.noise_sigma, size=(per_class, *spec.dims))
        samples[block] = mean + noise
        labels[block] = c + 1
    return LabeledDataset(samples=samples, labels=labels, n_classes=spec.n_classes)
