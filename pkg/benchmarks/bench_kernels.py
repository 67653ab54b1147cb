"""Timing comparison of the compiled and pure-NumPy recurrence kernels.

Run as  python benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import time

import numpy as np

from radialeit import _kernels_py
from radialeit.jacobi import build_family

try:
    from radialeit import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=7)
    args = parser.parse_args()

    jacobi_cases = [(40, 200), (40, 20_000), (400, 2_000)]
    legendre_cases = [(20, 5_000), (200, 5_000)]

    rows = []
    for kmax, n in jacobi_cases:
        fam = build_family(3, kmax)
        r = np.linspace(0.0, 1.0, n)
        sqrt_d = 3.0**0.5
        py = best_of(
            lambda: _kernels_py.jacobi_table(fam.rec_a, fam.rec_b, fam.rec_c, sqrt_d, r),
            args.repeats,
        )
        cy = (
            best_of(
                lambda: _kernels.jacobi_table(fam.rec_a, fam.rec_b, fam.rec_c, sqrt_d, r),
                args.repeats,
            )
            if _kernels
            else None
        )
        rows.append((f"jacobi_table  K={kmax:<4d} n={n}", py, cy))
    for lmax, n in legendre_cases:
        t = np.linspace(-1.0, 1.0, n)
        py = best_of(lambda: _kernels_py.legendre_table(t, lmax), args.repeats)
        cy = best_of(lambda: _kernels.legendre_table(t, lmax), args.repeats) if _kernels else None
        rows.append((f"legendre_table L={lmax:<3d} n={n}", py, cy))

    print(f"{'case':<34} {'numpy (ms)':>12} {'cython (ms)':>12} {'speedup':>9}")
    for name, py, cy in rows:
        if cy is None:
            print(f"{name:<34} {py * 1e3:>12.3f} {'n/a':>12} {'n/a':>9}")
        else:
            print(f"{name:<34} {py * 1e3:>12.3f} {cy * 1e3:>12.3f} {py / cy:>8.1f}x")
    if _kernels is None:
        print("\ncompiled extension not built; only the NumPy fallback was timed")


if __name__ == "__main__":
    main()
