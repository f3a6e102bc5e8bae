"""Compare the compiled kernels against the NumPy fallback.

Run as: python benchmarks/bench_kernels.py [--count N]
"""

import argparse
import time

import numpy as np

from egta import _fallback

try:
    from egta import _speedups
except ImportError:
    _speedups = None


def _time(fn, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=2_000_000)
    args = parser.parse_args()
    n = args.count

    impls = {"numpy": _fallback}
    if _speedups is not None:
        impls["cython"] = _speedups

    conds = _fallback.condition_stream(0, 0, 4096)
    ranks = np.arange(512, dtype=np.uint64)
    rng = np.random.default_rng(0)
    size = 200_000
    moments = [rng.uniform(1, 50, size), rng.normal(size=size), rng.uniform(0, 5, size)]
    batch = [rng.uniform(1, 50, size), rng.normal(size=size), rng.uniform(0, 5, size)]

    print(f"{'kernel':<24}{'impl':<10}{'best (ms)':>12}{'throughput':>18}")
    for name, impl in impls.items():
        t = _time(lambda: impl.condition_stream(1, 0, n))
        print(f"{'condition_stream':<24}{name:<10}{t * 1e3:>12.2f}{n / t / 1e6:>14.1f} M/s")
    for name, impl in impls.items():
        t = _time(lambda: impl.noise_sign_matrix(conds, 1, ranks))
        cells = conds.size * ranks.size
        print(f"{'noise_sign_matrix':<24}{name:<10}{t * 1e3:>12.2f}{cells / t / 1e6:>14.1f} M/s")
    for name, impl in impls.items():
        def run(impl=impl):
            a = [x.copy() for x in moments]
            impl.welford_merge(*a, *batch)
        t = _time(run)
        print(f"{'welford_merge':<24}{name:<10}{t * 1e3:>12.2f}{size / t / 1e6:>14.1f} M/s")

    if _speedups is not None:
        same = np.array_equal(
            _speedups.condition_stream(7, 3, 1000), _fallback.condition_stream(7, 3, 1000)
        )
        print(f"\nbit-identical streams: {same}")


if __name__ == "__main__":
    main()
