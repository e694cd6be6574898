"""Benchmark the numba kernels against the pure-numpy fallback.

Run:  python benchmarks/bench_backends.py [--quick]

The first numba call pays JIT compilation (cached on disk afterwards), so
every kernel is warmed once before timing. Both backends must produce
identical results; this script asserts that while it measures.
"""

import argparse
import time

import numpy as np

from mahlercf import kernels, search


def timed(fn, repeats=3):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true", help="smaller workloads")
    args = ap.parse_args()

    if not kernels.HAS_NUMBA:
        raise SystemExit("numba not importable; nothing to compare")

    scan_primes = (31, 47) if args.quick else (97, 199)
    scan_n = 2_000 if args.quick else 10_000
    dens_b = 300 if args.quick else 1000
    dens_pm = 300 if args.quick else 1000
    hist_n = 200_000

    primes, offsets, tables = search.condition_tables(dens_pm)

    workloads = [
        (
            f"survivor scan p={scan_primes}, N={scan_n}",
            lambda: [kernels.scan_grid(p, scan_n) for p in scan_primes],
            lambda out: [g.sum() for g in out],
        ),
        (
            f"density grid B={dens_b}, primes<={dens_pm}",
            lambda: kernels.density_count(-dens_b, dens_b, dens_b, primes, offsets, tables),
            lambda out: out,
        ),
        (
            f"single deep run p=997, n={hist_n}",
            lambda: kernels.run_history(5, 1, 997, hist_n),
            lambda out: (out[1][1 : hist_n + 1].sum(), out[2], out[3]),
        ),
    ]

    print(f"{'workload':<42} {'numba':>10} {'numpy':>10} {'speedup':>9}")
    print("-" * 75)
    for name, fn, digest in workloads:
        times = {}
        digests = {}
        for backend in ("numba", "numpy"):
            kernels.set_backend(backend)
            fn()  # warm (JIT / allocator)
            times[backend], out = timed(fn)
            digests[backend] = digest(out)
        assert str(digests["numba"]) == str(digests["numpy"]), f"backend mismatch in {name}"
        ratio = times["numpy"] / times["numba"]
        print(
            f"{name:<42} {times['numba']*1e3:>8.1f}ms {times['numpy']*1e3:>8.1f}ms "
            f"{ratio:>8.1f}x"
        )
    print("\nresults identical across backends")


if __name__ == "__main__":
    main()
