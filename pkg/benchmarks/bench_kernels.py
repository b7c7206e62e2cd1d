"""Compare the compiled batch kernels against the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--sizes 1000,100000,1000000]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from morphplay.kernels import pure

try:
    from morphplay.kernels import _batch
except ImportError:
    _batch = None


def bench(fn, *args, repeat: int = 5) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--sizes", default="1000,100000,1000000")
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    theta = 0.61
    rot = np.array(
        [[np.cos(theta), -np.sin(theta), 0.0], [np.sin(theta), np.cos(theta), 0.0], [0.0, 0.0, 1.0]]
    )
    pivot = np.array([1.0, -2.0, 0.5])
    delta = np.array([0.1, 0.2, 0.3])

    if _batch is None:
        print("compiled kernel not built; showing numpy fallback only")

    print(f"{'op':<10} {'n':>9} {'numpy (ms)':>12} {'compiled (ms)':>14} {'speedup':>8}")
    rng = np.random.default_rng(1)
    for n in sizes:
        pts = rng.uniform(-10, 10, (n, 3))
        for op, pure_fn, fast_fn, extra in (
            ("rotate", pure.rotate_points, getattr(_batch, "rotate_points", None), (rot, pivot)),
            ("translate", pure.translate_points, getattr(_batch, "translate_points", None), (delta,)),
        ):
            t_pure = bench(pure_fn, pts, *extra)
            if fast_fn is None:
                print(f"{op:<10} {n:>9} {t_pure * 1e3:>12.3f} {'-':>14} {'-':>8}")
                continue
            t_fast = bench(fast_fn, pts, *extra)
            np.testing.assert_allclose(fast_fn(pts, *extra), pure_fn(pts, *extra), atol=1e-12)
            print(
                f"{op:<10} {n:>9} {t_pure * 1e3:>12.3f} {t_fast * 1e3:>14.3f} "
                f"{t_pure / t_fast:>7.2f}x"
            )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
