"""Trainer behavior: frozen fixtures, cross-method equivalences, trace
bookkeeping, fixed-point self-consistency, and scoring."""

import numpy as np
import pytest
from scipy.linalg import subspace_angles

from mcsda import (
    DiscriminantModel,
    FitReport,
    LabeledDataset,
    TrainConfig,
    class_specific_objective,
    convergence_metric,
    fit_class_specific,
    fit_csda,
    fit_lda,
    fit_mcsda,
    fit_mda,
    fit_one_vs_rest,
    mode_k_class_specific_scatters,
    multiclass_objective,
    parameter_count,
    project,
    similarity_score,
    solve_ratio_trace,
    synth_generate,
    SynthSpec,
)

from conftest import random_dataset


def max_angle(a, b):
    return float(np.max(subspace_angles(np.asarray(a), np.asarray(b))))


def separable(rng, dims, n_classes=3, per_class=12, scale=8.0, noise=1.0):
    return random_dataset(
        rng, dims=dims, n_classes=n_classes, per_class=per_class,
        spread=scale, noise=noise,
    )


# ---------------------------------------------------------------------------
# config validation


def test_config_rejects_bad_values():
    with pytest.raises(ValueError, match="subspace_dims"):
        TrainConfig(subspace_dims=0)
    with pytest.raises(ValueError, match="subspace_dims"):
        TrainConfig(subspace_dims=(2, 0))
    with pytest.raises(ValueError, match="reg_lambda"):
        TrainConfig(subspace_dims=1, reg_lambda=-0.1)
    with pytest.raises(ValueError, match="max_iter"):
        TrainConfig(subspace_dims=1, max_iter=0)
    with pytest.raises(ValueError, match="eps"):
        TrainConfig(subspace_dims=1, eps=0.0)
    with pytest.raises(ValueError, match="init"):
        TrainConfig(subspace_dims=1, init="random")


def test_config_normalizes_list_dims():
    cfg = TrainConfig(subspace_dims=[3, 2])
    assert cfg.subspace_dims == (3, 2)


# ---------------------------------------------------------------------------
# csda


def test_csda_frozen_eigensolve():
    # scatters come out as diag(0, 8) over diag(2, 0); with lambda 0.01 the
    # top generalized eigenvalue is 8 / 0.01 and the basis vector is
    # (0, 10), normalized against the regularized denominator
    ds = LabeledDataset(
        samples=np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 2.0], [0.0, -2.0]]),
        labels=np.array([1, 1, 2, 2]),
        n_classes=2,
    )
    model = fit_csda(ds, 1, TrainConfig(subspace_dims=1, reg_lambda=0.01))
    w = model.projections[0]
    assert w.shape == (2, 1)
    assert w[0, 0] == pytest.approx(0.0, abs=1e-12)
    assert w[1, 0] == pytest.approx(10.0, rel=1e-12)
    # the objective uses the unregularized scatters: 8 / 0 -> inf
    assert model.fit_report.objective_trace == [np.inf]
    assert model.positive_class == 1
    assert np.allclose(model.reference_mean, [0.0, 0.0])


def test_csda_isotropic_tie_objective():
    # every direction gives out/in ratio 8, so the objective is pinned
    # even though the chosen vector is arbitrary
    ds = LabeledDataset(
        samples=np.array(
            [
                [1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0],
                [2.0, 2.0], [-2.0, -2.0], [2.0, -2.0], [-2.0, 2.0],
            ]
        ),
        labels=np.array([1, 1, 1, 1, 2, 2, 2, 2]),
        n_classes=2,
    )
    model = fit_csda(ds, 1, TrainConfig(subspace_dims=1, reg_lambda=0.01))
    assert model.fit_report.objective_trace[0] == pytest.approx(8.0, rel=1e-12)


def test_csda_all_positive_rejected(rng):
    ds = LabeledDataset(
        samples=rng.normal(size=(4, 3)), labels=np.ones(4, dtype=int), n_classes=1
    )
    with pytest.raises(ValueError):
        fit_csda(ds, 1, TrainConfig(subspace_dims=1))


# ---------------------------------------------------------------------------
# lda


def test_lda_two_class_matches_closed_form(rng):
    # rank-one between scatter: the single discriminant direction must be
    # parallel to (S_w + lambda I)^-1 (m1 - m2)
    ds = separable(rng, dims=(6,), n_classes=2, per_class=20)
    lam = 0.01
    model = fit_lda(ds, TrainConfig(subspace_dims=1, reg_lambda=lam))
    m1 = ds.samples[ds.labels == 1].mean(axis=0)
    m2 = ds.samples[ds.labels == 2].mean(axis=0)
    s_w = np.zeros((6, 6))
    for c, m in ((1, m1), (2, m2)):
        block = ds.samples[ds.labels == c] - m
        s_w += block.T @ block
    direction = np.linalg.solve(s_w + lam * np.eye(6), m1 - m2)
    assert max_angle(model.projections[0], direction[:, None]) < 1e-8


def test_lda_dimension_cap(rng):
    ds = separable(rng, dims=(5,), n_classes=3, per_class=8)
    model = fit_lda(ds, TrainConfig(subspace_dims=2))
    assert model.projections[0].shape == (5, 2)
    with pytest.raises(ValueError, match="exceeds n_classes - 1"):
        fit_lda(ds, TrainConfig(subspace_dims=3))


def test_lda_needs_two_classes(rng):
    ds = LabeledDataset(
        samples=rng.normal(size=(4, 3)), labels=np.ones(4, dtype=int), n_classes=1
    )
    with pytest.raises(ValueError, match="two classes"):
        fit_lda(ds, TrainConfig(subspace_dims=1))


def test_lda_keeps_class_means_not_reference(rng):
    ds = separable(rng, dims=(4,), n_classes=3, per_class=6)
    model = fit_lda(ds, TrainConfig(subspace_dims=2))
    assert model.reference_mean is None
    assert model.class_means.shape == (3, 4)
    with pytest.raises(RuntimeError, match="reference mean"):
        similarity_score(model, ds.samples[0])


# ---------------------------------------------------------------------------
# single-mode equivalences: with one mode the alternating methods reduce
# to their vectorized counterparts in a single sweep


def test_mcsda_equals_csda_one_mode(rng):
    ds = separable(rng, dims=(7,), n_classes=2, per_class=15)
    cfg = TrainConfig(subspace_dims=2, reg_lambda=0.01, max_iter=10)
    vec = fit_csda(ds, 1, cfg)
    ten = fit_mcsda(ds, 1, cfg)
    assert max_angle(vec.projections[0], ten.projections[0]) < 1e-6


def test_mda_equals_lda_one_mode(rng):
    ds = separable(rng, dims=(7,), n_classes=3, per_class=10)
    cfg = TrainConfig(subspace_dims=2, reg_lambda=0.01, max_iter=10)
    vec = fit_lda(ds, cfg)
    ten = fit_mda(ds, cfg)
    assert max_angle(vec.projections[0], ten.projections[0]) < 1e-6


def test_mcsda_one_mode_converges_in_two_sweeps(rng):
    # a single mode makes the problem jointly solvable, so sweep two
    # reproduces sweep one and the projector distance hits zero
    ds = separable(rng, dims=(5,), n_classes=2, per_class=10)
    model = fit_mcsda(ds, 1, TrainConfig(subspace_dims=2, max_iter=10))
    assert model.fit_report.iterations_run == 2
    assert model.fit_report.converged
    assert model.fit_report.convergence_trace[-1] <= 1e-5


# ---------------------------------------------------------------------------
# alternating fits


def test_mcsda_trace_bookkeeping(rng):
    ds = separable(rng, dims=(6, 5), n_classes=3, per_class=10)
    model = fit_mcsda(ds, 2, TrainConfig(subspace_dims=(2, 2), max_iter=15))
    rep = model.fit_report
    assert len(rep.objective_trace) == rep.iterations_run
    assert len(rep.convergence_trace) == rep.iterations_run
    assert 1 <= rep.iterations_run <= 15
    assert rep.converged == (rep.convergence_trace[-1] <= 1e-5)
    assert rep.wall_time_seconds > 0
    assert rep.parameter_count == 6 * 2 + 5 * 2
    assert all(np.isfinite(v) and v >= 0 for v in rep.objective_trace)


def test_mcsda_objective_beats_random_subspaces(rng):
    ds = separable(rng, dims=(6, 5), n_classes=3, per_class=12, scale=6.0)
    model = fit_mcsda(ds, 1, TrainConfig(subspace_dims=(2, 2), max_iter=20))
    j_fit = class_specific_objective(ds, 1, model.projections)
    for _ in range(5):
        qs = [
            np.linalg.qr(rng.normal(size=(i, 2)))[0]
            for i in ds.dims
        ]
        assert j_fit > class_specific_objective(ds, 1, qs)


def test_mcsda_fixed_point_self_consistent(rng):
    # once the sweep distance is ~0, re-solving any one mode with the
    # others held fixed must return the same subspace
    ds = separable(rng, dims=(5, 4), n_classes=2, per_class=12,
                   scale=20.0, noise=0.1)
    cfg = TrainConfig(subspace_dims=(2, 2), max_iter=300, eps=1e-10, reg_lambda=0.01)
    model = fit_mcsda(ds, 1, cfg)
    assert model.fit_report.converged
    for k in range(2):
        pair = mode_k_class_specific_scatters(ds, 1, model.projections, k)
        basis = solve_ratio_trace(pair, 2, cfg.reg_lambda)
        assert max_angle(model.projections[k], basis.vectors) < 1e-7


def test_mcsda_identity_slice_init(rng):
    ds = separable(rng, dims=(5, 4), n_classes=2, per_class=10)
    model = fit_mcsda(
        ds, 1, TrainConfig(subspace_dims=(2, 2), init="identity_slice")
    )
    assert model.fit_report.iterations_run >= 1
    assert all(w.shape == (i, 2) for w, i in zip(model.projections, ds.dims))


def test_mda_identical_classes_zero_objective(rng):
    block = rng.normal(size=(6, 4, 3))
    ds = LabeledDataset(
        samples=np.concatenate([block, block]),
        labels=np.array([1] * 6 + [2] * 6),
        n_classes=2,
    )
    model = fit_mda(ds, TrainConfig(subspace_dims=(2, 2), max_iter=5))
    assert model.fit_report.objective_trace[-1] == pytest.approx(0.0, abs=1e-20)


def test_tensor_subspace_dims_validated(rng):
    ds = separable(rng, dims=(4, 3), n_classes=2, per_class=6)
    with pytest.raises(ValueError, match="one subspace dimension per mode"):
        fit_mcsda(ds, 1, TrainConfig(subspace_dims=(2, 2, 2)))
    with pytest.raises(ValueError, match="outside 1..3"):
        fit_mcsda(ds, 1, TrainConfig(subspace_dims=(2, 4)))


def test_vector_subspace_dims_validated(rng):
    ds = separable(rng, dims=(4, 3), n_classes=2, per_class=6)
    with pytest.raises(ValueError, match="single subspace dimension"):
        fit_csda(ds, 1, TrainConfig(subspace_dims=(2, 2)))


# ---------------------------------------------------------------------------
# objectives


def test_objectives_zero_denominator_is_inf():
    ds = LabeledDataset(
        samples=np.array([[1.0, 0.0], [2.0, 0.0], [3.0, 0.0]]),
        labels=np.array([1, 2, 2]),
        n_classes=2,
    )
    # single positive sample: in-class scatter is exactly zero
    j = class_specific_objective(ds, 1, [np.eye(2)])
    assert j == np.inf


def test_multiclass_objective_matches_scatter_ratio(rng):
    ds = separable(rng, dims=(5,), n_classes=3, per_class=8)
    w = rng.normal(size=(5, 2))
    from mcsda import lda_scatters

    pair = lda_scatters(ds)
    want = np.trace(w.T @ pair.numerator @ w) / np.trace(
        w.T @ pair.denominator @ w
    )
    assert multiclass_objective(ds, [w]) == pytest.approx(want, rel=1e-10)


def test_class_specific_objective_matches_scatter_ratio(rng):
    ds = separable(rng, dims=(4, 3), n_classes=2, per_class=8)
    ws = [rng.normal(size=(4, 2)), rng.normal(size=(3, 2))]
    pair0 = mode_k_class_specific_scatters(ds, 1, ws, 0)
    want = np.trace(ws[0].T @ pair0.numerator @ ws[0]) / np.trace(
        ws[0].T @ pair0.denominator @ ws[0]
    )
    assert class_specific_objective(ds, 1, ws) == pytest.approx(want, rel=1e-10)


# ---------------------------------------------------------------------------
# convergence metric


def test_convergence_metric_trivials():
    w = np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])
    assert convergence_metric([w], [w]) == 0.0
    # sign flips and in-subspace rotations leave the projector unchanged
    theta = 0.3
    rot = np.array(
        [[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]]
    )
    assert convergence_metric([w], [w @ rot]) == pytest.approx(0.0, abs=1e-12)
    assert convergence_metric([w], [-w]) == pytest.approx(0.0, abs=1e-12)


def test_convergence_metric_orthogonal_lines():
    e1 = np.array([[1.0], [0.0]])
    e2 = np.array([[0.0], [1.0]])
    assert convergence_metric([e1], [e2]) == pytest.approx(np.sqrt(2.0), rel=1e-12)


def test_convergence_metric_sums_over_modes():
    e1 = np.array([[1.0], [0.0]])
    e2 = np.array([[0.0], [1.0]])
    assert convergence_metric([e1, e1], [e2, e2]) == pytest.approx(
        2 * np.sqrt(2.0), rel=1e-12
    )


def test_convergence_metric_rank_deficient_raises():
    flat = np.ones((3, 2))
    with pytest.raises(np.linalg.LinAlgError, match="rank-deficient"):
        convergence_metric([flat], [flat])


def test_convergence_metric_shape_checks():
    w = np.eye(3, 2)
    with pytest.raises(ValueError, match="lengths"):
        convergence_metric([w], [w, w])
    with pytest.raises(ValueError, match="shapes"):
        convergence_metric([w], [np.eye(2)])


# ---------------------------------------------------------------------------
# class-specific wrappers and one-vs-rest


def test_fit_class_specific_wraps_lda(rng):
    ds = separable(rng, dims=(5,), n_classes=3, per_class=10)
    model = fit_class_specific(ds, "lda", 2, TrainConfig(subspace_dims=1))
    assert model.method == "lda"
    assert model.positive_class == 2
    assert np.allclose(model.reference_mean, ds.samples[ds.labels == 2].mean(axis=0))
    assert 0.0 < similarity_score(model, ds.samples[0]) <= 1.0


def test_fit_class_specific_lda_binary_cap(rng):
    # the wrapper relabels to two classes, so the between scatter has rank
    # one and d = 2 is rejected even with three original classes
    ds = separable(rng, dims=(5,), n_classes=3, per_class=10)
    with pytest.raises(ValueError, match="exceeds n_classes - 1"):
        fit_class_specific(ds, "lda", 1, TrainConfig(subspace_dims=2))


def test_fit_class_specific_unknown_method(rng):
    ds = separable(rng, dims=(4,), n_classes=2, per_class=5)
    with pytest.raises(ValueError, match="unknown method"):
        fit_class_specific(ds, "pca", 1, TrainConfig(subspace_dims=1))


def test_one_vs_rest_order_and_references(rng):
    ds = separable(rng, dims=(4, 3), n_classes=3, per_class=8)
    models = fit_one_vs_rest(ds, "mcsda", TrainConfig(subspace_dims=(2, 2)))
    assert [m.positive_class for m in models] == [1, 2, 3]
    for c, model in enumerate(models, start=1):
        assert np.allclose(
            model.reference_mean, ds.samples[ds.labels == c].mean(axis=0)
        )


def test_one_vs_rest_threaded_matches_serial(rng):
    ds = separable(rng, dims=(4, 3), n_classes=3, per_class=8)
    cfg = TrainConfig(subspace_dims=(2, 2))
    serial = fit_one_vs_rest(ds, "mcsda", cfg, n_jobs=1)
    threaded = fit_one_vs_rest(ds, "mcsda", cfg, n_jobs=3)
    for a, b in zip(serial, threaded):
        for wa, wb in zip(a.projections, b.projections):
            assert np.allclose(wa, wb, rtol=1e-12, atol=1e-12)


# ---------------------------------------------------------------------------
# scoring


def test_project_shape_checks(rng):
    ds = separable(rng, dims=(4, 3), n_classes=2, per_class=6)
    model = fit_mcsda(ds, 1, TrainConfig(subspace_dims=(2, 2)))
    out = project(model, ds.samples[0])
    assert out.shape == (2, 2)
    with pytest.raises(ValueError, match="does not match"):
        project(model, np.zeros((3, 4)))


def test_similarity_score_hand_model():
    cfg = TrainConfig(subspace_dims=2)
    report = FitReport([0.0], [0.0], 1, True, 0.0, 4)
    model = DiscriminantModel(
        method="csda",
        projections=[np.eye(2)],
        input_dims=(2,),
        subspace_dims=2,
        reference_mean=np.zeros(2),
        positive_class=1,
        config=cfg,
        fit_report=report,
    )
    # identity projection, zero reference: score is 1 / (1 + ||x||)
    assert similarity_score(model, np.zeros(2)) == 1.0
    assert similarity_score(model, np.array([3.0, 4.0])) == pytest.approx(
        1.0 / 6.0, rel=1e-15
    )


def test_similarity_separates_well_separated_classes(rng):
    ds = separable(rng, dims=(5, 4), n_classes=3, per_class=14, scale=10.0)
    for method in ("csda", "mcsda"):
        cfg = TrainConfig(
            subspace_dims=2 if method == "csda" else (2, 2)
        )
        model = fit_class_specific(ds, method, 1, cfg)
        pos = [similarity_score(model, s) for s in ds.samples[ds.labels == 1]]
        neg = [similarity_score(model, s) for s in ds.samples[ds.labels != 1]]
        pairs = [(p, n) for p in pos for n in neg]
        frac = np.mean([p > n for p, n in pairs])
        assert frac >= 0.95


# ---------------------------------------------------------------------------
# parameter counts


def test_parameter_count_values():
    assert parameter_count("mcsda", (30, 30), (1, 1)) == 60
    assert parameter_count("csda", (30, 30), (1, 1)) == 900
    assert parameter_count("csda", (30, 30), 1) == 900
    assert parameter_count("mda", (40, 30), (7, 7)) == 490
    assert parameter_count("lda", (40, 30), (7, 7)) == 58800


def test_parameter_count_through_fits(rng):
    ds = separable(rng, dims=(30, 30), n_classes=2, per_class=8)
    ten = fit_mcsda(ds, 1, TrainConfig(subspace_dims=(1, 1), max_iter=3))
    assert ten.fit_report.parameter_count == 60
    vec = fit_csda(ds, 1, TrainConfig(subspace_dims=1))
    assert vec.fit_report.parameter_count == 900


def test_parameter_count_validation():
    with pytest.raises(ValueError, match="unknown method"):
        parameter_count("pca", (4, 3), (2, 2))
    with pytest.raises(ValueError, match="per mode"):
        parameter_count("mcsda", (4, 3), (2,))


# ---------------------------------------------------------------------------
# synthetic data helper keeps the trainers honest end to end


def test_synth_then_fit_recovers_structure():
    spec = SynthSpec(
        dims=(6, 5), n_classes=3, samples_per_class=15,
        class_mean_scale=8.0, noise_sigma=1.0, seed=7,
    )
    ds = synth_generate(spec)
    model = fit_mcsda(ds, 1, TrainConfig(subspace_dims=(2, 2), max_iter=20))
    assert model.fit_report.objective_trace[-1] > 1.0
