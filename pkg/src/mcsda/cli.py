"""Command line interface: synth, train, eval, bench.

Exit codes: 0 on success, 1 on runtime or numerical failure, 2 on usage
errors. Set MCSDA_LOG_LEVEL (DEBUG, INFO, ...) for progress logging.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
import time
from pathlib import Path

import numpy as np

from .datasets import (
    DatasetFormatError,
    SynthSpec,
    load_dataset,
    save_dataset,
    synth_generate,
)
from .discriminant import (
    METHODS,
    VECTOR_METHODS,
    TrainConfig,
    fit_class_specific,
    fit_lda,
    fit_mda,
    fit_mcsda,
    fit_csda,
    fit_one_vs_rest,
    parameter_count,
    similarity_score,
)
from .metrics import (
    average_precision,
    classification_report,
    predict_class,
    verification_report,
)
from .model_io import load_model, save_model

logger = logging.getLogger(__name__)


def _parse_dims(text: str) -> tuple[int, ...]:
    parts = text.split("x")
    try:
        dims = tuple(int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"invalid dims {text!r}: expected positive integers joined by 'x'"
        ) from None
    if not dims or any(d < 1 for d in dims):
        raise argparse.ArgumentTypeError(
            f"invalid dims {text!r}: every entry must be >= 1"
        )
    return dims


def _subspace_for(method: str, dims: tuple[int, ...]):
    """Map the --dims flag onto the method's subspace_dims convention."""
    if method in VECTOR_METHODS:
        if len(dims) != 1:
            raise ValueError(
                f"{method} takes a scalar subspace dimension, got "
                f"{'x'.join(str(d) for d in dims)}"
            )
        return dims[0]
    return dims


def _train_config(args, method: str) -> TrainConfig:
    return TrainConfig(
        subspace_dims=_subspace_for(method, args.dims),
        reg_lambda=args.reg_lambda,
        max_iter=args.max_iter,
        eps=args.eps,
        init=args.init,
        seed=args.seed,
    )


def _fit_report_entry(model) -> dict:
    rep = model.fit_report
    return {
        "class": model.positive_class,
        "method": model.method,
        "parameter_count": rep.parameter_count,
        "iterations_run": rep.iterations_run,
        "converged": rep.converged,
        "objective_trace": rep.objective_trace,
        "convergence_trace": rep.convergence_trace,
        "wall_time_seconds": rep.wall_time_seconds,
    }


def cmd_synth(args) -> int:
    spec = SynthSpec(
        dims=args.dims,
        n_classes=args.classes,
        samples_per_class=args.per_class,
        class_mean_scale=args.mean_scale,
        noise_sigma=args.sigma,
        seed=args.seed,
    )
    data = synth_generate(spec)
    manifest = save_dataset(data, args.out, force=args.force)
    print(json.dumps(manifest.to_json_dict()))
    return 0


def cmd_train(args) -> int:
    data = load_dataset(args.data)
    method = args.method
    config = _train_config(args, method)
    out = Path(args.out)
    if args.one_vs_rest:
        models = fit_one_vs_rest(data, method, config, n_jobs=args.jobs)
        for model in models:
            save_model(model, out / f"class_{model.positive_class}", force=args.force)
        entries = [_fit_report_entry(m) for m in models]
    elif args.positive_class is not None:
        model = fit_class_specific(data, method, args.positive_class, config)
        save_model(model, out, force=args.force)
        entries = [_fit_report_entry(model)]
    else:
        if method in ("csda", "mcsda"):
            raise ValueError(
                f"{method} is class-specific: pass --positive-class or --one-vs-rest"
            )
        model = fit_lda(data, config) if method == "lda" else fit_mda(data, config)
        save_model(model, out, force=args.force)
        entries = [_fit_report_entry(model)]
    report = {"version": 1, "method": method, "models": entries}
    report_path = out / "fit_report.json"
    report_path.parent.mkdir(parents=True, exist_ok=True)
    report_path.write_text(json.dumps(report, indent=2) + "\n")
    for entry in entries:
        tag = "" if entry["class"] is None else f" class {entry['class']}"
        print(
            f"trained {method}{tag}: {entry['iterations_run']} sweeps, "
            f"converged={entry['converged']}, "
            f"parameters={entry['parameter_count']}, "
            f"{entry['wall_time_seconds']:.3f}s"
        )
    return 0


def _expand_model_dirs(spec: str) -> list[Path]:
    paths: list[Path] = []
    for chunk in spec.split(","):
        root = Path(chunk)
        if (root / "model.json").exists():
            paths.append(root)
            continue
        if not root.is_dir():
            raise FileNotFoundError(f"no model directory at {root}")
        subdirs = sorted(p for p in root.iterdir() if (p / "model.json").exists())
        if not subdirs:
            raise FileNotFoundError(f"no model.json under {root}")
        paths.extend(subdirs)
    return paths


def cmd_eval(args) -> int:
    models = [load_model(p) for p in _expand_model_dirs(args.models)]
    models.sort(key=lambda m: (m.positive_class is None, m.positive_class))
    data = load_dataset(args.data)
    for model in models:
        if tuple(model.input_dims) != data.dims:
            raise RuntimeError(
                f"model dims {tuple(model.input_dims)} do not match dataset "
                f"dims {data.dims}"
            )
    if args.task == "verify":
        per_class_ap: dict[int, float] = {}
        support: dict[int, int] = {}
        for model in models:
            if model.positive_class is None:
                raise RuntimeError(
                    "verification needs class-specific models (no positive class set)"
                )
            scores = [similarity_score(model, s) for s in data.samples]
            flags = data.labels == model.positive_class
            per_class_ap[model.positive_class] = average_precision(scores, flags)
            support[model.positive_class] = int(flags.sum())
        report = verification_report(per_class_ap, support)
    else:
        covered = sorted(m.positive_class for m in models)
        if covered != list(range(1, data.n_classes + 1)):
            raise RuntimeError(
                f"classification needs one model per class 1..{data.n_classes}, "
                f"got positive classes {covered}"
            )
        preds = [predict_class(models, s) for s in data.samples]
        report = classification_report(data.labels, preds, data.n_classes)
    doc = report.to_json_dict()
    text = json.dumps(doc, indent=2)
    report_path = Path(args.report)
    report_path.parent.mkdir(parents=True, exist_ok=True)
    report_path.write_text(text + "\n")
    print(text)
    return 0


def cmd_bench(args) -> int:
    """Time the vectorized against the multilinear class-specific fit on
    one synthetic dataset and report wall times plus the model-size gap."""
    dims = args.dims
    sub = args.subspace
    if len(sub) != len(dims):
        raise ValueError(
            f"--subspace needs one entry per mode of --dims: got "
            f"{'x'.join(map(str, sub))} for {'x'.join(map(str, dims))}"
        )
    if any(s > d for s, d in zip(sub, dims)):
        raise ValueError("--subspace entries must not exceed --dims entries")
    per_class = max(1, args.n // 2)
    data = synth_generate(
        SynthSpec(
            dims=dims,
            n_classes=2,
            samples_per_class=per_class,
            class_mean_scale=5.0,
            noise_sigma=1.0,
            seed=args.seed,
        )
    )
    d_vector = math.prod(sub)
    vec_cfg = TrainConfig(
        subspace_dims=d_vector,
        reg_lambda=args.reg_lambda,
        max_iter=args.max_iter,
        eps=args.eps,
    )
    ten_cfg = TrainConfig(
        subspace_dims=sub,
        reg_lambda=args.reg_lambda,
        max_iter=args.max_iter,
        eps=args.eps,
    )

    def best_of(fn) -> float:
        times = []
        for _ in range(args.repeats):
            start = time.perf_counter()
            fn()
            times.append(time.perf_counter() - start)
        return min(times)

    csda_seconds = best_of(lambda: fit_csda(data, 1, vec_cfg))
    mcsda_model = fit_mcsda(data, 1, ten_cfg)
    mcsda_seconds = best_of(lambda: fit_mcsda(data, 1, ten_cfg))
    ratio = csda_seconds / mcsda_seconds

    # dominant-term cost model: one eigensolve at prod(dims) for the
    # vectorized fit vs max_iter sweeps of per-mode solves
    big = math.prod(dims)
    n_total = data.count
    predicted_csda = n_total * big**2 + 6.5 * big**3
    predicted_mcsda = args.max_iter * (
        n_total * big * sum(sub) + 6.5 * sum(d**3 for d in dims)
    )
    predicted_ratio = predicted_csda / predicted_mcsda

    result = {
        "dims": list(dims),
        "subspace": list(sub),
        "samples": n_total,
        "repeats": args.repeats,
        "csda_seconds": csda_seconds,
        "mcsda_seconds": mcsda_seconds,
        "ratio_csda_over_mcsda": ratio,
        "predicted_ratio": predicted_ratio,
        "mcsda_iterations_run": mcsda_model.fit_report.iterations_run,
        "parameter_count_csda": parameter_count("csda", dims, d_vector),
        "parameter_count_mcsda": parameter_count("mcsda", dims, sub),
    }
    if args.report:
        Path(args.report).write_text(json.dumps(result, indent=2) + "\n")
    print(f"csda   {csda_seconds:10.4f}s  (normalized {ratio:8.2f})")
    print(f"mcsda  {mcsda_seconds:10.4f}s  (normalized {1.0:8.2f})")
    print(
        f"measured ratio csda/mcsda = {ratio:.2f}, "
        f"dominant-term prediction = {predicted_ratio:.2f}"
    )
    print(
        f"parameters: csda {result['parameter_count_csda']}, "
        f"mcsda {result['parameter_count_mcsda']}"
    )
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mcsda",
        description="Train and evaluate discriminant subspace models on tensor data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    synth = sub.add_parser("synth", help="generate a synthetic dataset directory")
    synth.add_argument("--dims", type=_parse_dims, required=True, help="e.g. 8x6")
    synth.add_argument("--classes", type=int, required=True)
    synth.add_argument("--per-class", type=int, required=True)
    synth.add_argument("--mean-scale", type=float, default=1.0)
    synth.add_argument("--sigma", type=float, default=0.1)
    synth.add_argument("--seed", type=int, default=0)
    synth.add_argument("--out", required=True)
    synth.add_argument("--force", action="store_true", help="overwrite existing output")
    synth.set_defaults(func=cmd_synth)

    train = sub.add_parser("train", help="train discriminant models")
    train.add_argument("--data", required=True, help="dataset directory")
    train.add_argument("--method", choices=sorted(METHODS), required=True)
    train.add_argument(
        "--dims",
        type=_parse_dims,
        required=True,
        help="subspace dims: AxB per mode for mda/mcsda, scalar for lda/csda",
    )
    train.add_argument("--lambda", dest="reg_lambda", type=float, default=0.01)
    train.add_argument("--max-iter", type=int, default=20)
    train.add_argument("--eps", type=float, default=1e-5)
    train.add_argument("--init", choices=("ones", "identity_slice"), default="ones")
    train.add_argument("--seed", type=int, default=0)
    group = train.add_mutually_exclusive_group()
    group.add_argument("--positive-class", type=int)
    group.add_argument("--one-vs-rest", action="store_true")
    train.add_argument("--jobs", type=int, default=1, help="parallel per-class fits")
    train.add_argument("--out", required=True)
    train.add_argument("--force", action="store_true", help="overwrite existing output")
    train.set_defaults(func=cmd_train)

    ev = sub.add_parser("eval", help="evaluate saved models on a dataset")
    ev.add_argument(
        "--models",
        required=True,
        help="model directory, comma list, or directory of class_<i> models",
    )
    ev.add_argument("--data", required=True)
    ev.add_argument("--task", choices=("verify", "classify"), required=True)
    ev.add_argument("--report", required=True, help="path for the JSON report")
    ev.set_defaults(func=cmd_eval)

    bench = sub.add_parser(
        "bench", help="time vectorized vs multilinear class-specific training"
    )
    bench.add_argument("--dims", type=_parse_dims, default=(40, 30))
    bench.add_argument("--subspace", type=_parse_dims, default=(7, 7))
    bench.add_argument("--n", type=int, default=200, help="total sample count")
    bench.add_argument("--repeats", type=int, default=5)
    bench.add_argument("--lambda", dest="reg_lambda", type=float, default=0.01)
    bench.add_argument("--max-iter", type=int, default=20)
    bench.add_argument("--eps", type=float, default=1e-5)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--report", help="optional path for a JSON result")
    bench.set_defaults(func=cmd_bench)

    return parser


def _log_level() -> int:
    name = os.environ.get("MCSDA_LOG_LEVEL", "WARNING").upper()
    value = getattr(logging, name, None)
    return value if isinstance(value, int) else logging.WARNING


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    logging.basicConfig(level=_log_level(), format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except DatasetFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, RuntimeError, np.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
