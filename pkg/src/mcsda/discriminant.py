"""Discriminant subspace learning on vector and tensor data.

Four trainers share one regularized ratio-trace eigensolver. ``fit_lda``
and ``fit_csda`` vectorize their samples and learn a single projection
matrix in one eigensolve. ``fit_mda`` and ``fit_mcsda`` keep the native
tensor shape and learn one projection matrix per mode by alternating
per-mode eigensolves: Gauss-Seidel sweeps over modes starting from an
all-ones initialization, terminated when the summed projector distance
between consecutive sweeps drops to `eps`.

The class-specific criteria (``csda``, ``mcsda``) separate one positive
class from everything else and center every scatter on the positive
class mean; the multi-class criteria (``lda``, ``mda``) use between- and
within-class scatters over all classes. Trained models score a sample by
inverse distance to the projected reference mean, 1 / (1 + d).
"""

from __future__ import annotations

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from numpy.linalg import LinAlgError

from .datasets import LabeledDataset
from .linalg import ScatterPair, solve_ratio_trace
from .tensor_ops import multi_project

__all__ = [
    "VECTOR_METHODS",
    "TENSOR_METHODS",
    "METHODS",
    "TrainConfig",
    "ClassStatistics",
    "FitReport",
    "DiscriminantModel",
    "class_statistics",
    "lda_scatters",
    "csda_scatters",
    "mode_k_class_specific_scatters",
    "mda_mode_scatters",
    "class_specific_objective",
    "multiclass_objective",
    "convergence_metric",
    "fit_lda",
    "fit_csda",
    "fit_mda",
    "fit_mcsda",
    "fit_class_specific",
    "fit_one_vs_rest",
    "project",
    "similarity_score",
    "parameter_count",
]

logger = logging.getLogger(__name__)

VECTOR_METHODS = frozenset({"lda", "csda"})
TENSOR_METHODS = frozenset({"mda", "mcsda"})
METHODS = VECTOR_METHODS | TENSOR_METHODS

INIT_CHOICES = ("ones", "identity_slice")


@dataclass(frozen=True)
class TrainConfig:
    """Shared training knobs.

    `subspace_dims` is a per-mode tuple for tensor methods and a plain
    integer for vector methods. `reg_lambda` is added to the denominator
    scatter before every eigensolve; `max_iter` and `eps` bound the
    alternating sweeps of the tensor methods. `seed` is recorded for
    reproducibility (the bundled initializations are deterministic).
    """

    subspace_dims: int | tuple[int, ...]
    reg_lambda: float = 0.01
    max_iter: int = 20
    eps: float = 1e-5
    init: str = "ones"
    seed: int = 0

    def __post_init__(self):
        dims = self.subspace_dims
        if isinstance(dims, (tuple, list)):
            dims = tuple(int(d) for d in dims)
            object.__setattr__(self, "subspace_dims", dims)
            bad = not dims or any(d < 1 for d in dims)
        else:
            bad = int(dims) < 1
        if bad:
            raise ValueError(f"subspace_dims must be positive, got {self.subspace_dims}")
        if self.reg_lambda < 0:
            raise ValueError(f"reg_lambda must be >= 0, got {self.reg_lambda}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")
        if not self.eps > 0:
            raise ValueError(f"eps must be > 0, got {self.eps}")
        if self.init not in INIT_CHOICES:
            raise ValueError(f"init must be one of {INIT_CHOICES}, got {self.init!r}")


@dataclass(frozen=True)
class ClassStatistics:
    """Per-class means plus the count-weighted total mean."""

    class_means: np.ndarray  # (C, *dims)
    total_mean: np.ndarray  # (*dims)
    counts: np.ndarray  # (C,)
    positive_mean: np.ndarray | None = None


@dataclass
class FitReport:
    """Bookkeeping of one training run.

    `objective_trace` and `convergence_trace` carry one entry per sweep;
    the single-solve methods report one trivially converged sweep.
    """

    objective_trace: list[float]
    convergence_trace: list[float]
    iterations_run: int
    converged: bool
    wall_time_seconds: float
    parameter_count: int


@dataclass
class DiscriminantModel:
    """A trained projection set plus whatever scoring needs.

    `projections` holds one matrix per mode for tensor methods and a
    single matrix over the vectorized sample for vector methods.
    `reference_mean` (the positive class mean, in input shape) is present
    exactly when the model can score; multi-class lda/mda keep all class
    means instead.
    """

    method: str
    projections: list[np.ndarray]
    input_dims: tuple[int, ...]
    subspace_dims: int | tuple[int, ...]
    reference_mean: np.ndarray | None
    positive_class: int | None
    config: TrainConfig
    fit_report: FitReport
    class_means: np.ndarray | None = field(default=None)


# ---------------------------------------------------------------------------
# statistics and scatters


def _flatten_samples(samples: np.ndarray) -> np.ndarray:
    """(N, *dims) -> (N, prod(dims)) with per-sample Fortran flattening,
    the same embedding the on-disk format and tensor unfoldings use."""
    n = samples.shape[0]
    flat_dim = math.prod(samples.shape[1:])
    return np.moveaxis(samples, 0, -1).reshape(flat_dim, n, order="F").T


def class_statistics(data: LabeledDataset, positive: int | None = None) -> ClassStatistics:
    """Class means, counts and total mean; errors on any empty class."""
    counts = data.class_counts()
    for label, count in enumerate(counts, start=1):
        if count == 0:
            raise ValueError(f"class {label} is empty")
    if positive is not None and not 1 <= positive <= data.n_classes:
        raise ValueError(
            f"positive class {positive} outside 1..{data.n_classes}"
        )
    dims = data.dims
    class_means = np.empty((data.n_classes, *dims), dtype=np.float64)
    for label in range(1, data.n_classes + 1):
        class_means[label - 1] = data.samples[data.labels == label].mean(axis=0)
    total_mean = data.samples.mean(axis=0)
    positive_mean = None if positive is None else class_means[positive - 1].copy()
    return ClassStatistics(
        class_means=class_means,
        total_mean=total_mean,
        counts=counts,
        positive_mean=positive_mean,
    )


def _symmetrized_gram(rows: np.ndarray) -> np.ndarray:
    s = rows.T @ rows
    return 0.5 * (s + s.T)


def lda_scatters(data: LabeledDataset) -> ScatterPair:
    """Between-class (numerator) and within-class (denominator) scatters
    of the vectorized samples."""
    stats = class_statistics(data)
    x = _flatten_samples(data.samples)
    means = _flatten_samples(stats.class_means)
    total = stats.total_mean.ravel(order="F")
    diffs = (means - total) * np.sqrt(stats.counts)[:, None]
    s_b = _symmetrized_gram(diffs)
    centered = x - means[data.labels - 1]
    s_w = _symmetrized_gram(centered)
    return ScatterPair(numerator=s_b, denominator=s_w)


def csda_scatters(data: LabeledDataset, positive: int) -> ScatterPair:
    """Out-of-class (numerator) and in-class (denominator) scatters, both
    centered on the positive class mean, over vectorized samples."""
    stats = class_statistics(data, positive=positive)
    pos_mask = data.labels == positive
    if pos_mask.all():
        raise ValueError("every sample belongs to the positive class")
    x = _flatten_samples(data.samples)
    centered = x - stats.positive_mean.ravel(order="F")
    s_out = _symmetrized_gram(centered[~pos_mask])
    s_in = _symmetrized_gram(centered[pos_mask])
    return ScatterPair(numerator=s_out, denominator=s_in)


def _mode_scatter(stack: np.ndarray, projections, skip: int) -> np.ndarray:
    """Sum over the leading axis of U U^T, where U is the mode-`skip`
    unfolding of each entry after projecting every other mode.

    The unfolding column order here differs from the fiber convention,
    which is harmless: U U^T is invariant to column permutations.
    """
    out = stack
    for q, w in enumerate(projections):
        if q == skip:
            continue
        w = np.asarray(w, dtype=np.float64)
        out = np.moveaxis(np.tensordot(w.T, out, axes=(1, q + 1)), 0, q + 1)
    h = np.moveaxis(out, skip + 1, 0)
    h = h.reshape(h.shape[0], -1)
    s = h @ h.T
    return 0.5 * (s + s.T)


def _check_projection_list(projections, dims, skip: int | None = None):
    ws = [np.asarray(w, dtype=np.float64) for w in projections]
    if len(ws) != len(dims):
        raise ValueError(
            f"expected {len(dims)} projection matrices, got {len(ws)}"
        )
    for k, w in enumerate(ws):
        if k == skip:
            continue
        if w.ndim != 2 or w.shape[0] != dims[k]:
            raise ValueError(
                f"projection {k} has shape {w.shape}, expected ({dims[k]}, d)"
            )
    return ws


def mode_k_class_specific_scatters(
    data: LabeledDataset, positive: int, projections, mode: int
) -> ScatterPair:
    """Mode-`mode` out-of-class and in-class scatters.

    Each sample is centered on the positive class mean, projected on every
    mode except `mode` with the current matrices (entry `mode` of
    `projections` is ignored), unfolded along `mode`, and accumulated as
    U U^T: negatives into the numerator, positives into the denominator.
    """
    dims = data.dims
    if not 0 <= mode < len(dims):
        raise ValueError(f"mode {mode} out of range for {len(dims)}-mode data")
    ws = _check_projection_list(projections, dims, skip=mode)
    stats = class_statistics(data, positive=positive)
    pos_mask = data.labels == positive
    if pos_mask.all():
        raise ValueError("every sample belongs to the positive class")
    centered = data.samples - stats.positive_mean
    return ScatterPair(
        numerator=_mode_scatter(centered[~pos_mask], ws, mode),
        denominator=_mode_scatter(centered[pos_mask], ws, mode),
    )


def mda_mode_scatters(data: LabeledDataset, projections, mode: int) -> ScatterPair:
    """Mode-`mode` between-class (count-weighted) and within-class
    scatters for the multi-class tensor criterion."""
    dims = data.dims
    if not 0 <= mode < len(dims):
        raise ValueError(f"mode {mode} out of range for {len(dims)}-mode data")
    ws = _check_projection_list(projections, dims, skip=mode)
    stats = class_statistics(data)
    shape = (-1,) + (1,) * len(dims)
    between = (stats.class_means - stats.total_mean) * np.sqrt(
        stats.counts
    ).reshape(shape)
    within = data.samples - stats.class_means[data.labels - 1]
    return ScatterPair(
        numerator=_mode_scatter(between, ws, mode),
        denominator=_mode_scatter(within, ws, mode),
    )


# ---------------------------------------------------------------------------
# objectives and convergence


def _project_stack(stack: np.ndarray, projections) -> np.ndarray:
    out = stack
    for q, w in enumerate(projections):
        w = np.asarray(w, dtype=np.float64)
        out = np.moveaxis(np.tensordot(w.T, out, axes=(1, q + 1)), 0, q + 1)
    return out


def _projected_sq_norm(stack: np.ndarray, projections) -> float:
    out = _project_stack(stack, projections)
    return float(np.sum(out * out))


def _ratio(num: float, den: float) -> float:
    return num / den if den > 0 else math.inf


def class_specific_objective(data: LabeledDataset, positive: int, projections) -> float:
    """Ratio of out-of-class to in-class scatter in the projected space,
    both centered on the positive class mean.

    `projections` may be one matrix per mode, or a single matrix applied
    to the vectorized samples (the vector-method route).
    """
    stats = class_statistics(data, positive=positive)
    pos_mask = data.labels == positive
    if pos_mask.all():
        raise ValueError("every sample belongs to the positive class")
    ws = list(projections)
    if len(ws) == 1 and len(data.dims) != 1:
        centered = _flatten_samples(data.samples - stats.positive_mean)
    else:
        if len(ws) != len(data.dims):
            raise ValueError(
                f"expected {len(data.dims)} projection matrices, got {len(ws)}"
            )
        centered = data.samples - stats.positive_mean
    num = _projected_sq_norm(centered[~pos_mask], ws)
    den = _projected_sq_norm(centered[pos_mask], ws)
    return _ratio(num, den)


def multiclass_objective(data: LabeledDataset, projections) -> float:
    """Ratio of projected between-class to within-class scatter."""
    stats = class_statistics(data)
    shape = (-1,) + (1,) * len(data.dims)
    between = (stats.class_means - stats.total_mean) * np.sqrt(
        stats.counts
    ).reshape(shape)
    within = data.samples - stats.class_means[data.labels - 1]
    ws = list(projections)
    if len(ws) == 1 and len(data.dims) != 1:
        between = _flatten_samples(between)
        within = _flatten_samples(within)
    elif len(ws) != len(data.dims):
        raise ValueError(
            f"expected {len(data.dims)} projection matrices, got {len(ws)}"
        )
    return _ratio(_projected_sq_norm(between, ws), _projected_sq_norm(within, ws))


def _subspace_projector(w: np.ndarray, strict: bool = False) -> np.ndarray:
    """Orthogonal projector onto the column space of w.

    With `strict` set, a numerically rank-deficient w raises instead of
    being truncated to its actual column space.
    """
    w = np.asarray(w, dtype=np.float64)
    u, s, _ = np.linalg.svd(w, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        rank = 0
    else:
        tol = max(w.shape) * np.finfo(np.float64).eps * s[0]
        rank = int(np.count_nonzero(s > tol))
    if strict and rank < w.shape[1]:
        raise LinAlgError(
            f"projection matrix of shape {w.shape} is rank-deficient "
            f"(numerical rank {rank})"
        )
    basis = u[:, :rank]
    return basis @ basis.T


def convergence_metric(prev, curr) -> float:
    """Summed Frobenius distance between the per-mode column-space
    projectors of two projection sets.

    Zero iff every mode spans the same subspace; invariant to column
    signs and within-subspace basis changes. Raises LinAlgError when any
    matrix is rank-deficient, since its projector is then ambiguous in
    the W (W^T W)^-1 W^T form.
    """
    prev = list(prev)
    curr = list(curr)
    if len(prev) != len(curr):
        raise ValueError(
            f"projection sets have different lengths: {len(prev)} vs {len(curr)}"
        )
    total = 0.0
    for wp, wc in zip(prev, curr):
        wp = np.asarray(wp, dtype=np.float64)
        wc = np.asarray(wc, dtype=np.float64)
        if wp.shape != wc.shape:
            raise ValueError(
                f"projection shapes differ: {wp.shape} vs {wc.shape}"
            )
        total += float(
            np.linalg.norm(
                _subspace_projector(wc, strict=True)
                - _subspace_projector(wp, strict=True)
            )
        )
    return total


# ---------------------------------------------------------------------------
# fitting


def _scalar_subspace_dim(subspace_dims) -> int:
    if isinstance(subspace_dims, tuple):
        if len(subspace_dims) != 1:
            raise ValueError(
                "vector methods take a single subspace dimension, got "
                f"{subspace_dims}"
            )
        return int(subspace_dims[0])
    return int(subspace_dims)


def _tensor_subspace_dims(subspace_dims, dims) -> tuple[int, ...]:
    sub = (
        (int(subspace_dims),)
        if not isinstance(subspace_dims, tuple)
        else subspace_dims
    )
    if len(sub) != len(dims):
        raise ValueError(
            f"need one subspace dimension per mode: got {sub} for dims {dims}"
        )
    for k, (d, full) in enumerate(zip(sub, dims)):
        if not 1 <= d <= full:
            raise ValueError(
                f"subspace dimension {d} for mode {k} outside 1..{full}"
            )
    return sub


def _init_projections(dims, sub_dims, init: str) -> list[np.ndarray]:
    if init == "ones":
        return [np.ones((i, j)) for i, j in zip(dims, sub_dims)]
    return [np.eye(i, j) for i, j in zip(dims, sub_dims)]


def _single_solve_report(
    objective: float, wall: float, n_params: int
) -> FitReport:
    # one closed-form eigensolve: report a single trivially converged sweep
    return FitReport(
        objective_trace=[float(objective)],
        convergence_trace=[0.0],
        iterations_run=1,
        converged=True,
        wall_time_seconds=wall,
        parameter_count=n_params,
    )


def _alternating_fit(num_stack, den_stack, dims, sub_dims, config):
    """Gauss-Seidel sweeps of per-mode eigensolves for stacks of centered
    tensors whose mode scatters form the numerator and denominator."""
    ws = _init_projections(dims, sub_dims, config.init)
    # the all-ones init is rank one, so the first sweep's distance uses
    # the truncated column-space projector rather than the strict form
    prev = [_subspace_projector(w) for w in ws]
    objective_trace: list[float] = []
    convergence_trace: list[float] = []
    converged = False
    sweeps = 0
    for _ in range(config.max_iter):
        for k in range(len(dims)):
            pair = ScatterPair(
                numerator=_mode_scatter(num_stack, ws, k),
                denominator=_mode_scatter(den_stack, ws, k),
            )
            ws[k] = solve_ratio_trace(pair, sub_dims[k], config.reg_lambda).vectors
        sweeps += 1
        objective_trace.append(
            _ratio(
                _projected_sq_norm(num_stack, ws),
                _projected_sq_norm(den_stack, ws),
            )
        )
        current = [_subspace_projector(w) for w in ws]
        delta = float(
            sum(np.linalg.norm(c - p) for c, p in zip(current, prev))
        )
        convergence_trace.append(delta)
        prev = current
        logger.debug(
            "sweep %d: objective=%.6g delta=%.3g", sweeps, objective_trace[-1], delta
        )
        if delta <= config.eps:
            converged = True
            break
    return ws, objective_trace, convergence_trace, sweeps, converged


def fit_csda(data: LabeledDataset, positive: int, config: TrainConfig) -> DiscriminantModel:
    """Single eigensolve of the vectorized class-specific criterion."""
    start = time.perf_counter()
    d = _scalar_subspace_dim(config.subspace_dims)
    pair = csda_scatters(data, positive)
    basis = solve_ratio_trace(pair, d, config.reg_lambda)
    stats = class_statistics(data, positive=positive)
    objective = class_specific_objective(data, positive, [basis.vectors])
    n_params = parameter_count("csda", data.dims, d)
    report = _single_solve_report(objective, time.perf_counter() - start, n_params)
    return DiscriminantModel(
        method="csda",
        projections=[basis.vectors],
        input_dims=data.dims,
        subspace_dims=d,
        reference_mean=stats.positive_mean,
        positive_class=positive,
        config=config,
        fit_report=report,
    )


def fit_lda(data: LabeledDataset, config: TrainConfig) -> DiscriminantModel:
    """Single eigensolve of the vectorized multi-class criterion.

    The between-class scatter has rank at most C - 1, so subspace
    dimensions beyond that are rejected.
    """
    start = time.perf_counter()
    d = _scalar_subspace_dim(config.subspace_dims)
    if data.n_classes < 2:
        raise ValueError("lda needs at least two classes")
    if d > data.n_classes - 1:
        raise ValueError(
            f"lda subspace dimension {d} exceeds n_classes - 1 = "
            f"{data.n_classes - 1}"
        )
    pair = lda_scatters(data)
    basis = solve_ratio_trace(pair, d, config.reg_lambda)
    stats = class_statistics(data)
    objective = multiclass_objective(data, [basis.vectors])
    n_params = parameter_count("lda", data.dims, d)
    report = _single_solve_report(objective, time.perf_counter() - start, n_params)
    return DiscriminantModel(
        method="lda",
        projections=[basis.vectors],
        input_dims=data.dims,
        subspace_dims=d,
        reference_mean=None,
        positive_class=None,
        config=config,
        fit_report=report,
        class_means=stats.class_means,
    )


def fit_mcsda(data: LabeledDataset, positive: int, config: TrainConfig) -> DiscriminantModel:
    """Alternating per-mode eigensolves of the class-specific tensor
    criterion, centered on the positive class mean."""
    start = time.perf_counter()
    dims = data.dims
    sub_dims = _tensor_subspace_dims(config.subspace_dims, dims)
    stats = class_statistics(data, positive=positive)
    pos_mask = data.labels == positive
    if pos_mask.all():
        raise ValueError("every sample belongs to the positive class")
    centered = data.samples - stats.positive_mean
    ws, objective_trace, convergence_trace, sweeps, converged = _alternating_fit(
        centered[~pos_mask], centered[pos_mask], dims, sub_dims, config
    )
    report = FitReport(
        objective_trace=objective_trace,
        convergence_trace=convergence_trace,
        iterations_run=sweeps,
        converged=converged,
        wall_time_seconds=time.perf_counter() - start,
        parameter_count=parameter_count("mcsda", dims, sub_dims),
    )
    return DiscriminantModel(
        method="mcsda",
        projections=ws,
        input_dims=dims,
        subspace_dims=sub_dims,
        reference_mean=stats.positive_mean,
        positive_class=positive,
        config=config,
        fit_report=report,
    )


def fit_mda(data: LabeledDataset, config: TrainConfig) -> DiscriminantModel:
    """Alternating per-mode eigensolves of the multi-class tensor
    criterion (count-weighted between vs within scatter)."""
    start = time.perf_counter()
    if data.n_classes < 2:
        raise ValueError("mda needs at least two classes")
    dims = data.dims
    sub_dims = _tensor_subspace_dims(config.subspace_dims, dims)
    stats = class_statistics(data)
    shape = (-1,) + (1,) * len(dims)
    between = (stats.class_means - stats.total_mean) * np.sqrt(
        stats.counts
    ).reshape(shape)
    within = data.samples - stats.class_means[data.labels - 1]
    ws, objective_trace, convergence_trace, sweeps, converged = _alternating_fit(
        between, within, dims, sub_dims, config
    )
    report = FitReport(
        objective_trace=objective_trace,
        convergence_trace=convergence_trace,
        iterations_run=sweeps,
        converged=converged,
        wall_time_seconds=time.perf_counter() - start,
        parameter_count=parameter_count("mda", dims, sub_dims),
    )
    return DiscriminantModel(
        method="mda",
        projections=ws,
        input_dims=dims,
        subspace_dims=sub_dims,
        reference_mean=None,
        positive_class=None,
        config=config,
        fit_report=report,
        class_means=stats.class_means,
    )


def fit_class_specific(
    data: LabeledDataset, method: str, positive: int, config: TrainConfig
) -> DiscriminantModel:
    """Train one scoring model for `positive` with any of the four methods.

    csda/mcsda are class-specific natively. lda/mda are wrapped: samples
    are relabeled {positive -> 1, rest -> 2}, the binary model is trained,
    and the positive class mean becomes the scoring reference.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if method == "csda":
        return fit_csda(data, positive, config)
    if method == "mcsda":
        return fit_mcsda(data, positive, config)
    stats = class_statistics(data, positive=positive)
    binary = LabeledDataset(
        samples=data.samples,
        labels=np.where(data.labels == positive, 1, 2),
        n_classes=2,
    )
    model = fit_lda(binary, config) if method == "lda" else fit_mda(binary, config)
    model.positive_class = positive
    model.reference_mean = stats.positive_mean
    return model


def fit_one_vs_rest(
    data: LabeledDataset, method: str, config: TrainConfig, n_jobs: int = 1
) -> list[DiscriminantModel]:
    """Train one scoring model per class, returned in class id order.

    Per-class fits are independent, so they may run on worker threads;
    the merge order is by class id either way.
    """
    classes = list(range(1, data.n_classes + 1))
    if n_jobs > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            futures = [
                pool.submit(fit_class_specific, data, method, c, config)
                for c in classes
            ]
            return [f.result() for f in futures]
    return [fit_class_specific(data, method, c, config) for c in classes]


# ---------------------------------------------------------------------------
# scoring


def project(model: DiscriminantModel, sample) -> np.ndarray:
    """Project one sample into the model's subspace.

    Vector methods flatten the sample first (Fortran order, matching the
    storage layout); tensor methods apply the per-mode matrices.
    """
    s = np.asarray(sample, dtype=np.float64)
    if s.shape != tuple(model.input_dims):
        raise ValueError(
            f"sample shape {s.shape} does not match model input dims "
            f"{tuple(model.input_dims)}"
        )
    if model.method in VECTOR_METHODS:
        return model.projections[0].T @ s.ravel(order="F")
    return multi_project(s, model.projections)


def similarity_score(model: DiscriminantModel, sample) -> float:
    """Inverse-distance similarity 1 / (1 + d), where d is the Frobenius
    distance between the projected sample and the projected reference
    mean. Monotone decreasing in d, equal to 1 only at d = 0."""
    if model.reference_mean is None:
        raise RuntimeError(
            "model has no reference mean; train class-specifically or "
            "one-vs-rest to enable scoring"
        )
    diff = project(model, sample) - project(model, model.reference_mean)
    return 1.0 / (1.0 + float(np.linalg.norm(diff)))


def parameter_count(method: str, input_dims, subspace_dims) -> int:
    """Stored projection parameters: sum of I_k * I'_k per mode for
    tensor methods, prod(I_k) * prod(I'_k) for vector methods."""
    dims = tuple(int(d) for d in input_dims)
    if method in TENSOR_METHODS:
        sub = (
            (int(subspace_dims),)
            if not isinstance(subspace_dims, (tuple, list))
            else tuple(int(d) for d in subspace_dims)
        )
        if len(sub) != len(dims):
            raise ValueError(
                f"need one subspace dimension per mode: got {sub} for dims {dims}"
            )
        return int(sum(i * j for i, j in zip(dims, sub)))
    if method in VECTOR_METHODS:
        if isinstance(subspace_dims, (tuple, list)):
            d = math.prod(int(x) for x in subspace_dims)
        else:
            d = int(subspace_dims)
        return math.prod(dims) * d
    raise ValueError(f"unknown method {method!r}")
