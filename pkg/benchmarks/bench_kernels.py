"""Benchmark the numba kernels against the pure-numpy fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N]

Covers the three workloads that dominate package runtime: row reduction,
matrix products, and end-to-end homology of random complexes.
"""

import argparse
import time

import numpy as np

from framecat import _kernels, rand
from framecat.chaincof import HomologyView


def bench(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def workload_rref(p=2):
    rng = np.random.default_rng(0)
    mats = [rng.integers(0, p, size=(60, 120)).astype(np.int64)
            for _ in range(40)]

    def run():
        for m in mats:
            _kernels.rref(m, p)

    return run


def workload_matmul(p=2):
    rng = np.random.default_rng(1)
    mats = [rng.integers(0, p, size=(80, 80)).astype(np.int64)
            for _ in range(60)]

    def run():
        acc = mats[0]
        for m in mats[1:]:
            acc = _kernels.matmul(acc, m, p)

    return run


def workload_homology(p=2):
    complexes = [rand.random_complex(rand.rng_for(7, i), p,
                                     max_degree=4, max_dim=14)
                 for i in range(30)]

    def run():
        for x in complexes:
            HomologyView(x)

    return run


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    workloads = [("rref 60x120 x40", workload_rref()),
                 ("matmul 80x80 chain x60", workload_matmul()),
                 ("homology of 30 complexes", workload_homology())]

    results = {}
    for backend in ("numpy", "numba"):
        _kernels.set_backend(backend)
        if backend == "numba":
            _kernels.rref(np.eye(2, dtype=np.int64), 2)  # compile outside timer
            _kernels.matmul(np.eye(2, dtype=np.int64),
                            np.eye(2, dtype=np.int64), 2)
        for name, fn in workloads:
            results[(backend, name)] = bench(fn, args.repeat)
    _kernels.set_backend(None)

    print(f"{'workload':<28} {'numpy':>10} {'numba':>10} {'speedup':>9}")
    for name, _ in workloads:
        tn = results[('numpy', name)]
        tb = results[('numba', name)]
        print(f"{name:<28} {tn * 1e3:>8.2f}ms {tb * 1e3:>8.2f}ms "
              f"{tn / tb:>8.2f}x")


if __name__ == "__main__":
    main()
