"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--points 200000] [--repeat 5]

Each pair is checked for agreement before timing.  The first numba call is
excluded so compilation does not count.
"""
import argparse
import timeit

import numpy as np

from subordkit import _accel, kernels
from subordkit.domains import TargetDomain, boundary_samples


def best_of(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat)) * 1e3


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--points", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if not _accel.USE_NUMBA:
        print("numba disabled (SUBORDKIT_DISABLE_NUMBA or not installed): numba column runs as plain Python")

    rng = np.random.default_rng(args.seed)
    n = args.points
    b = boundary_samples(TargetDomain.named("cardioid"), 4096)
    bx, by = np.ascontiguousarray(b.real), np.ascontiguousarray(b.imag)
    px = rng.uniform(-1.0, 4.0, n)
    py = rng.uniform(-3.0, 3.0, n)

    coeffs = rng.normal(size=(2048, 9)) + 1j * rng.normal(size=(2048, 9))
    z = 0.995 * np.exp(2j * np.pi * np.arange(256) / 256)

    few = slice(0, min(n, 2000))
    cases = [
        ("horner 2048x9 @ 256", kernels.horner_numba, kernels.horner_numpy, (coeffs, z)),
        (f"crossing winding {n} pts", kernels.crossing_winding_numba, kernels.crossing_winding_numpy,
         (bx, by, px, py)),
        ("argument change 2000 pts", kernels.argument_change_numba, kernels.argument_change_numpy,
         (bx, by, px[few].copy(), py[few].copy())),
    ]

    print(f"{'kernel':32s} {'numba ms':>10s} {'numpy ms':>10s} {'speedup':>8s}")
    for name, fast, slow, argv in cases:
        a, r = fast(*argv), slow(*argv)
        for x, y in zip(a if isinstance(a, tuple) else (a,), r if isinstance(r, tuple) else (r,)):
            if not np.allclose(x, y, rtol=1e-12, atol=1e-9):
                raise SystemExit(f"{name}: backends disagree")
        t_fast = best_of(lambda: fast(*argv), args.repeat)
        t_slow = best_of(lambda: slow(*argv), args.repeat)
        print(f"{name:32s} {t_fast:10.2f} {t_slow:10.2f} {t_slow / t_fast:8.1f}x")


if __name__ == "__main__":
    main()
