#!/usr/bin/env python3
"""Benchmark the compiled exhaustive-search engine against the pure-Python one.

Run after `pip install -e . --no-build-isolation`:

    python benchmarks/bench_engines.py
"""

import statistics
import time

from eqclus import _engine
from eqclus._bruteforce_py import best_equal_partition as py_engine
from eqclus.generators import gen_random

try:
    from eqclus._bruteforce import best_equal_partition as c_engine
except ImportError:
    c_engine = None

CASES = [
    # n, k, d, coord_bound, p
    (10, 2, 2, 3, 1),
    (12, 2, 2, 3, 1),
    (12, 3, 2, 3, 0),
    (12, 3, 3, 4, 1),
    (12, 4, 2, 3, 1),
    (12, 6, 2, 2, 0),
    (14, 2, 2, 4, 1),
]


def timed(fn, coords, k, p, repeats=3):
    best = None
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(coords, k, p)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, result


def main():
    print(f"active engine: {'compiled' if _engine.COMPILED else 'pure Python'}")
    if c_engine is None:
        print("compiled extension not available; timing pure Python only")
    rows = []
    speedups = []
    for n, k, d, bound, p in CASES:
        inst = gen_random(n=n, k=k, d=d, coord_bound=bound, p=p, B=0, seed=42)
        coords = [pt.coords for pt in inst.points]
        t_py, r_py = timed(py_engine, coords, k, p)
        if c_engine is not None:
            t_c, r_c = timed(c_engine, coords, k, p)
            assert r_py == (r_c[0], list(r_c[1])), "engines disagree"
            speedups.append(t_py / t_c)
            rows.append((n, k, d, p, t_py, t_c, t_py / t_c))
        else:
            rows.append((n, k, d, p, t_py, None, None))
    print(f"{'n':>3} {'k':>2} {'d':>2} {'p':>2} {'python [ms]':>12} "
          f"{'compiled [ms]':>14} {'speedup':>8}")
    for n, k, d, p, t_py, t_c, sp in rows:
        c_col = f"{t_c * 1e3:14.3f}" if t_c is not None else f"{'-':>14}"
        s_col = f"{sp:8.1f}" if sp is not None else f"{'-':>8}"
        print(f"{n:>3} {k:>2} {d:>2} {p:>2} {t_py * 1e3:12.3f} {c_col} {s_col}")
    if speedups:
        print(f"median speedup: {statistics.median(speedups):.1f}x")


if __name__ == "__main__":
    main()
