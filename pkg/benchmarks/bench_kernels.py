#!/usr/bin/env python3
"""Timing comparison of the JIT-compiled kernels against the pure-NumPy
fallback, driven through the public API so each workload exercises one
kernel where it dominates.

Usage:
    python3 benchmarks/bench_kernels.py [--repeat N]

The fallback can also be forced package-wide with PGLCA_NO_NUMBA=1; this
script instead swaps the dispatch module's bindings so both backends run
in one process, after a warm-up pass that absorbs JIT compilation.
"""

import argparse
import time

import numpy as np

from pglca import (
    SearchConfig,
    assemble,
    coverage_brute,
    is_covering_array,
    kernels,
    make_field,
    mark_flexible,
    parse_symbols,
    search_residual_matrix,
    search_starters,
    starter_check,
)
from pglca import _kernels_numpy as knp

try:
    from pglca import _kernels_numba as knb
except ImportError:  # pragma: no cover - numba missing entirely
    knb = None

_KERNEL_NAMES = (
    "coverage_count",
    "find_first_missing",
    "tuple_count_table",
    "greedy_flex",
    "hill_climb",
    "c1_climb",
)

# A known pair of length-30 starter vectors whose development is a verified
# covering array: gives the verifier a full-scan (worst-case) workload.
_U30 = "011*11***001***1*10**0*1100*01"
_V30 = "11**01101000*101*1*0*000010***"


def _use(backend):
    for name in _KERNEL_NAMES:
        setattr(kernels, name, getattr(backend, name))


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _workloads():
    fs = make_field(2)
    u = parse_symbols(_U30, 2)
    v = parse_symbols(_V30, 2)
    ca = assemble(fs, u, v)  # verified 4-CA(363,30,3)
    rng = np.random.default_rng(0)
    noise = ca.entries.copy()
    noise[rng.integers(0, 30, 40), rng.integers(0, 363, 40)] = rng.integers(
        0, 3, 40, dtype=np.int16
    )
    from pglca import TestingArray

    damaged = TestingArray(g=3, entries=noise)

    # A deficient pair for the completion-matrix climber.
    rng2 = np.random.default_rng(1)
    u21 = rng2.integers(0, 3, 21, dtype=np.int16)
    v21 = rng2.integers(0, 3, 21, dtype=np.int16)
    report = starter_check(fs, u21, v21)

    search_cfg = SearchConfig(k=21, budget=60_000, restarts=2, seed=0,
                              plateau_cap=4000)
    # Smaller budget: the fallback's per-move loop is two to three orders
    # of magnitude slower on this kernel.
    c1_cfg = SearchConfig(k=21, budget=20_000, restarts=2, seed=0,
                          plateau_cap=4000)

    return [
        ("coverage_count", "full recount of 4-CA(363,30,3)",
         lambda: coverage_brute(damaged)),
        ("find_first_missing", "verify 4-CA(363,30,3), full scan",
         lambda: is_covering_array(ca)),
        ("tuple_count_table + greedy_flex", "flexibility mask of the 363-column array",
         lambda: mark_flexible(ca, seed=0)),
        ("hill_climb", "starter search k=21, 60k moves",
         lambda: search_starters(search_cfg, fs)),
        ("c1_climb", "completion search k=21 width 9, 20k moves",
         lambda: search_residual_matrix(report, 9, c1_cfg, fs)),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3,
                    help="repetitions per measurement; the minimum is kept")
    args = ap.parse_args()

    if knb is None:
        print("numba backend unavailable; nothing to compare")
        return 1

    workloads = _workloads()

    # Warm-up: compile every JIT kernel before timing.
    _use(knb)
    for _, _, fn in workloads:
        fn()

    print(f"{'workload':<45} {'numba':>10} {'numpy':>10} {'speedup':>9}")
    print("-" * 77)
    for name, desc, fn in workloads:
        _use(knb)
        t_nb = _time(fn, args.repeat)
        _use(knp)
        t_np = _time(fn, args.repeat)
        _use(knb)
        ratio = t_np / t_nb if t_nb > 0 else float("inf")
        print(f"{name:<45} {t_nb:>9.4f}s {t_np:>9.4f}s {ratio:>8.1f}x")
        print(f"    {desc}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
