#!/usr/bin/env python3
"""Benchmark the compiled kernels against the NumPy fallback.

Runs the two hot loops (torus grid sampling for the Mahler-measure oracle,
and point counting for the L-series coefficients) on both backends, checks
that they agree, and reports timings.

    python benchmarks/bench_kernels.py [--grid 512] [--pmax 20000]
"""

import argparse
import math
import time

import numpy as np

from mahler37 import _kernels_py

try:
    from mahler37 import _kernels
except ImportError:
    _kernels = None


def _poly_arrays():
    # y^2 + 4xy + y - x^3 + x^2, the workhorse polynomial
    cre = np.array([1.0, 4.0, 1.0, -1.0, 1.0])
    cim = np.zeros(5)
    iexp = np.array([0, 1, 0, 3, 2], dtype=np.int64)
    jexp = np.array([2, 1, 1, 0, 0], dtype=np.int64)
    return cre, cim, iexp, jexp


def _primes_up_to(n):
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, int(math.isqrt(n)) + 1):
        if sieve[p]:
            sieve[p * p:: p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i, v in enumerate(sieve) if v]


def bench(label, fn, repeats=3):
    best = math.inf
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    print(f"  {label:<18} {best * 1e3:10.2f} ms")
    return best, result


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--grid", type=int, default=512)
    parser.add_argument("--pmax", type=int, default=20000)
    args = parser.parse_args()

    backends = [("python", _kernels_py)]
    if _kernels is not None:
        backends.insert(0, ("cython", _kernels))
    else:
        print("compiled kernel not built; benchmarking the fallback only")

    arrays = _poly_arrays()
    print(f"grid_logabs_sum, n = {args.grid} ({args.grid ** 2} nodes):")
    grid_results = {}
    grid_times = {}
    for name, mod in backends:
        t, res = bench(name, lambda m=mod: m.grid_logabs_sum(*arrays, args.grid))
        grid_results[name] = res
        grid_times[name] = t

    primes = _primes_up_to(args.pmax)
    print(f"count_affine over {len(primes)} primes up to {args.pmax}:")
    count_results = {}
    count_times = {}
    for name, mod in backends:
        t, res = bench(name, lambda m=mod: [m.count_affine(p) for p in primes])
        count_results[name] = res
        count_times[name] = t

    if _kernels is not None:
        s_c, _ = grid_results["cython"]
        s_p, _ = grid_results["python"]
        assert abs(s_c - s_p) < 1e-6 * max(1.0, abs(s_p)), "grid sums disagree"
        assert count_results["cython"] == count_results["python"], "counts disagree"
        print("results agree between backends")
        print(f"speedups: grid x{grid_times['python'] / grid_times['cython']:.2f}, "
              f"counting x{count_times['python'] / count_times['cython']:.2f}")


if __name__ == "__main__":
    main()
