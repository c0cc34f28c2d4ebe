#!/usr/bin/env python3
"""numpy vs numba for the finite-field Hecke product and rank kernels.

Run: python3 benchmarks/bench_kernels.py
"""
import os
import time

import numpy as np

from althecke import _kernels
from althecke.fields import FiniteField


def timed(backend, fn, reps):
    os.environ["ALTHECKE_BACKEND"] = backend
    fn()  # warm up (numba compiles on first call)
    t0 = time.perf_counter()
    for _ in range(reps):
        out = fn()
    return (time.perf_counter() - t0) / reps, out


def main():
    rng = np.random.default_rng(0)
    print(f"{'kernel':>14}  {'size':>6}  {'numpy (ms)':>11}  {'numba (ms)':>11}  {'speedup':>8}  agree")
    print("-" * 66)
    for n, q in [(4, 7), (5, 25), (6, 7)]:
        p = 5 if q == 25 else q
        F = FiniteField(p, 2 if q == 25 else 1)
        tables = F.tables
        N = len(_kernels.hecke_tables(n)[0])
        a = rng.integers(0, q, N).astype(np.int32)
        b = rng.integers(0, q, N).astype(np.int32)
        xi = F.encode(F.element_of_order(3) if (q - 1) % 3 == 0 else F.one())
        fn = lambda: _kernels.hecke_mul(a, b, n, xi, tables)
        reps = 3 if n == 6 else 20
        t_np, r_np = timed("numpy", fn, reps)
        t_nb, r_nb = timed("numba", fn, reps)
        ok = np.array_equal(r_np, r_nb)
        print(f"{'hecke_mul':>14}  {'S' + str(n):>6}  {1e3 * t_np:>11.2f}  {1e3 * t_nb:>11.2f}  "
              f"{t_np / t_nb:>7.1f}x  {ok}")
    for m, q in [(60, 7), (120, 25), (240, 7)]:
        p = 5 if q == 25 else q
        F = FiniteField(p, 2 if q == 25 else 1)
        M = rng.integers(0, q, (m, m)).astype(np.int32)
        fn = lambda: _kernels.rank_mod(M, F.tables)
        t_np, r_np = timed("numpy", fn, 3)
        t_nb, r_nb = timed("numba", fn, 3)
        print(f"{'rank_mod':>14}  {m:>6}  {1e3 * t_np:>11.2f}  {1e3 * t_nb:>11.2f}  "
              f"{t_np / t_nb:>7.1f}x  {r_np == r_nb}")


if __name__ == "__main__":
    main()
