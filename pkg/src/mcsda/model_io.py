"""Model directory format: model.json plus raw float64 matrices.

A saved model is a directory holding ``model.json`` and one
``W<k>.bin`` per projection matrix (k is 1-based), each stored
column-major as little-endian float64 with its shape recorded in the
manifest. Class-specific models additionally store the reference mean as
``mean.bin``; multi-class lda/mda store all class means as
``class_means.bin``. Round trips are bit exact.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .datasets import DatasetFormatError
from .discriminant import METHODS, DiscriminantModel, FitReport, TrainConfig

__all__ = ["save_model", "load_model"]

MODEL_VERSION = 1
MODEL_NAME = "model.json"


def _write_matrix(path: Path, w: np.ndarray) -> None:
    path.write_bytes(w.ravel(order="F").astype("<f8", copy=False).tobytes())


def _read_array(path: Path, shape: tuple[int, ...]) -> np.ndarray:
    if not path.exists():
        raise FileNotFoundError(f"missing model file {path}")
    raw = path.read_bytes()
    expected = math.prod(shape) * 8
    if len(raw) != expected:
        raise DatasetFormatError(
            f"{path}: size mismatch: expected {expected} bytes, found {len(raw)}"
        )
    flat = np.frombuffer(raw, dtype="<f8").astype(np.float64)
    return flat.reshape(shape, order="F")


def save_model(model: DiscriminantModel, path, force: bool = False) -> None:
    """Write `model` to directory `path`; refuses to overwrite unless
    `force` is set. model.json goes last so its presence marks a complete
    directory."""
    root = Path(path)
    manifest_path = root / MODEL_NAME
    if manifest_path.exists() and not force:
        raise FileExistsError(
            f"refusing to overwrite existing model at {root} (use force)"
        )
    root.mkdir(parents=True, exist_ok=True)
    projections = []
    for k, w in enumerate(model.projections, start=1):
        w = np.asarray(w, dtype=np.float64)
        name = f"W{k}.bin"
        _write_matrix(root / name, w)
        projections.append({"file": name, "rows": w.shape[0], "cols": w.shape[1]})
    doc = {
        "version": MODEL_VERSION,
        "method": model.method,
        "input_dims": list(model.input_dims),
        "subspace_dims": (
            list(model.subspace_dims)
            if isinstance(model.subspace_dims, tuple)
            else int(model.subspace_dims)
        ),
        "positive_class": model.positive_class,
        "lambda": model.config.reg_lambda,
        "max_iter": model.config.max_iter,
        "eps": model.config.eps,
        "init": model.config.init,
        "seed": model.config.seed,
        "parameter_count": model.fit_report.parameter_count,
        "projections": projections,
        "reference_mean": None,
        "class_means": None,
        "fit_report": {
            "objective_trace": [float(v) for v in model.fit_report.objective_trace],
            "convergence_trace": [float(v) for v in model.fit_report.convergence_trace],
            "iterations_run": model.fit_report.iterations_run,
            "converged": model.fit_report.converged,
            "wall_time_seconds": model.fit_report.wall_time_seconds,
            "parameter_count": model.fit_report.parameter_count,
        },
    }
    if model.reference_mean is not None:
        _write_matrix(root / "mean.bin", model.reference_mean)
        doc["reference_mean"] = {"file": "mean.bin", "dims": list(model.input_dims)}
    if model.class_means is not None:
        means = np.asarray(model.class_means, dtype=np.float64)
        _write_matrix(root / "class_means.bin", np.moveaxis(means, 0, -1))
        doc["class_means"] = {
            "file": "class_means.bin",
            "count": means.shape[0],
            "dims": list(model.input_dims),
        }
    manifest_path.write_text(json.dumps(doc, indent=2) + "\n")


def load_model(path) -> DiscriminantModel:
    """Load a model directory written by :func:`save_model`."""
    root = Path(path)
    manifest_path = root / MODEL_NAME
    if not manifest_path.exists():
        raise FileNotFoundError(f"{root}: missing {MODEL_NAME}")
    try:
        doc = json.loads(manifest_path.read_text())
    except json.JSONDecodeError as exc:
        raise DatasetFormatError(f"{manifest_path}: invalid JSON: {exc}") from exc
    if doc.get("version") != MODEL_VERSION:
        raise DatasetFormatError(
            f"{manifest_path}: unsupported version {doc.get('version')!r}, "
            f"expected {MODEL_VERSION}"
        )
    method = doc.get("method")
    if method not in METHODS:
        raise DatasetFormatError(f"{manifest_path}: unknown method {method!r}")
    input_dims = tuple(int(d) for d in doc["input_dims"])
    raw_sub = doc["subspace_dims"]
    subspace_dims = (
        tuple(int(d) for d in raw_sub) if isinstance(raw_sub, list) else int(raw_sub)
    )
    projections = [
        _read_array(root / entry["file"], (int(entry["rows"]), int(entry["cols"])))
        for entry in doc["projections"]
    ]
    reference_mean = None
    if doc.get("reference_mean") is not None:
        entry = doc["reference_mean"]
        dims = tuple(int(d) for d in entry["dims"])
        reference_mean = _read_array(root / entry["file"], dims)
    class_means = None
    if doc.get("class_means") is not None:
        entry = doc["class_means"]
        dims = tuple(int(d) for d in entry["dims"])
        stacked = _read_array(root / entry["file"], dims + (int(entry["count"]),))
        class_means = np.ascontiguousarray(np.moveaxis(stacked, -1, 0))
    config = TrainConfig(
        subspace_dims=subspace_dims,
        reg_lambda=float(doc["lambda"]),
        max_iter=int(doc["max_iter"]),
        eps=float(doc["eps"]),
        init=str(doc["init"]),
        seed=int(doc["seed"]),
    )
    rep = doc["fit_report"]
    report = FitReport(
        objective_trace=[float(v) for v in rep["objective_trace"]],
        convergence_trace=[float(v) for v in rep["convergence_trace"]],
        iterations_run=int(rep["iterations_run"]),
        converged=bool(rep["converged"]),
        wall_time_seconds=float(rep["wall_time_seconds"]),
        parameter_count=int(rep["parameter_count"]),
    )
    positive = doc.get("positive_class")
    return DiscriminantModel(
        method=method,
        projections=projections,
        input_dims=input_dims,
        subspace_dims=subspace_dims,
        reference_mean=reference_mean,
        positive_class=None if positive is None else int(positive),
        config=config,
        fit_report=report,
        class_means=class_means,
    )
