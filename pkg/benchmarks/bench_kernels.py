#!/usr/bin/env python3
"""Benchmark the compiled overlap-table kernel against the numpy fallback.

The table fill is the hot kernel behind every solver in the package: a
truncation sweep rebuilds it at each rung and a parameter sweep does so at
every grid point.  Usage:

    python benchmarks/bench_kernels.py [--sizes 65,129,257,513] [--repeats 5]
"""

import argparse
import time

import numpy as np

from rabispec._kernels import _overlap_cy, _overlap_py


def best_time(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="65,129,257,513",
                        help="comma-separated table sizes (n_tr + 1)")
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--delta", type=float, default=1.0)
    parser.add_argument("--g", type=float, default=1.5)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    print(f"overlap-table fill, delta={args.delta}, g={args.g} "
          f"(best of {args.repeats})")
    print(f"{'size':>6} {'cython':>12} {'python':>12} {'speedup':>9} {'max|diff|':>11}")
    for size in sizes:
        t_cy = best_time(lambda: _overlap_cy.fill_table(args.delta, args.g, size),
                         args.repeats)
        t_py = best_time(lambda: _overlap_py.fill_table(args.delta, args.g, size),
                         args.repeats)
        diff = np.max(np.abs(_overlap_cy.fill_table(args.delta, args.g, size)
                             - _overlap_py.fill_table(args.delta, args.g, size)))
        print(f"{size:>6} {t_cy * 1e3:>10.2f}ms {t_py * 1e3:>10.2f}ms "
              f"{t_py / t_cy:>8.1f}x {diff:>11.2e}")


if __name__ == "__main__":
    main()
