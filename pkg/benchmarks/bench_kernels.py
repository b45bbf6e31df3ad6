"""Compare the compiled map-iteration kernels against the numpy reference.

Usage: python benchmarks/bench_kernels.py [--points N] [--steps N]
"""

import argparse
import time

import numpy as np

from poncelet.kernels import _ref

try:
    from poncelet.kernels import _speedups
except ImportError:
    _speedups = None


def time_call(fn, *args, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--points", type=int, default=512)
    parser.add_argument("--steps", type=int, default=20_000)
    args = parser.parse_args()

    rng = np.random.default_rng(0)

    # the estimation pipelines mostly iterate long orbits of one or a few
    # points, where per-step numpy dispatch dominates; wide batches show
    # the libm-bound regime where the two backends converge
    for points in (1, args.points):
        xs = rng.uniform(0.0, 1.0, points)
        cases = [
            ("poncelet_advance", (xs, args.steps, 1.0, 0.3, 0.2)),
            ("arnold_advance", (xs, args.steps, 0.3, 0.8)),
        ]
        print(f"{points} point(s), {args.steps} steps, best of 3")
        for name, call_args in cases:
            t_ref = time_call(getattr(_ref, name), *call_args)
            line = f"  {name:18s} python {t_ref * 1e3:9.1f} ms"
            if _speedups is not None:
                t_fast = time_call(getattr(_speedups, name), *call_args)
                line += (f"   compiled {t_fast * 1e3:9.1f} ms"
                         f"   x{t_ref / t_fast:.1f}")
            else:
                line += "   (compiled extension not built)"
            print(line)


if __name__ == "__main__":
    main()
