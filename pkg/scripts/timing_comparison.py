"""Training-cost sweep: vectorized vs per-mode class-specific fits.

Each size entry is dims:subspace (for example 40x30:7x7). For every
size the script times one vectorized fit at the product dimension and
one alternating multilinear fit, best of --repeats, and prints the
measured wall-time ratio next to the dominant-term prediction (one
eigensolve at the product dimension against max_iter sweeps of
per-mode solves).

Example:
    python3 scripts/timing_comparison.py --sizes 20x15:5x5,40x30:7x7
"""

import argparse
import json
import math
import time

from mcsda import SynthSpec, TrainConfig, fit_csda, fit_mcsda, synth_generate


def parse_sizes(text):
    sizes = []
    for chunk in text.split(","):
        dims_text, sub_text = chunk.split(":")
        sizes.append(
            (
                tuple(int(p) for p in dims_text.split("x")),
                tuple(int(p) for p in sub_text.split("x")),
            )
        )
    return sizes


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--sizes", type=parse_sizes, default=parse_sizes("20x15:5x5,30x20:7x7,40x30:7x7")
    )
    parser.add_argument("--n", type=int, default=200, help="total sample count")
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--lambda", dest="reg_lambda", type=float, default=0.01)
    parser.add_argument("--max-iter", type=int, default=20)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--report", help="optional JSON output path")
    args = parser.parse_args()

    rows = []
    for dims, sub in args.sizes:
        data = synth_generate(
            SynthSpec(
                dims=dims,
                n_classes=2,
                samples_per_class=max(1, args.n // 2),
                class_mean_scale=5.0,
                noise_sigma=1.0,
                seed=args.seed,
            )
        )
        vec_cfg = TrainConfig(
            subspace_dims=math.prod(sub),
            reg_lambda=args.reg_lambda,
            max_iter=args.max_iter,
        )
        ten_cfg = TrainConfig(
            subspace_dims=sub, reg_lambda=args.reg_lambda, max_iter=args.max_iter
        )
        vec_s = best_of(lambda: fit_csda(data, 1, vec_cfg), args.repeats)
        ten_s = best_of(lambda: fit_mcsda(data, 1, ten_cfg), args.repeats)
        big = math.prod(dims)
        predicted = (data.count * big**2 + 6.5 * big**3) / (
            args.max_iter
            * (data.count * big * sum(sub) + 6.5 * sum(d**3 for d in dims))
        )
        rows.append(
            {
                "dims": list(dims),
                "subspace": list(sub),
                "csda_seconds": vec_s,
                "mcsda_seconds": ten_s,
                "ratio": vec_s / ten_s,
                "predicted_ratio": predicted,
            }
        )

    print(f"{'dims':>8} {'subspace':>9} {'csda s':>9} {'mcsda s':>9} "
          f"{'ratio':>7} {'predicted':>10}")
    for row in rows:
        dims = "x".join(map(str, row["dims"]))
        sub = "x".join(map(str, row["subspace"]))
        print(
            f"{dims:>8} {sub:>9} {row['csda_seconds']:>9.4f} "
            f"{row['mcsda_seconds']:>9.4f} {row['ratio']:>7.2f} "
            f"{row['predicted_ratio']:>10.2f}"
        )
    if args.report:
        with open(args.report, "w") as fh:
            json.dump({"version": 1, "rows": rows}, fh, indent=2)
            fh.write("\n")


if __name__ == "__main__":
    main()
