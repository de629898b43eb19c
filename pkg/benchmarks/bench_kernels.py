"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--quick]

Each row reports the best of ``--repeat`` runs after one warm-up call (so JIT
compilation is excluded) and checks that both backends return the same data.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from dbflab import kernels
from dbflab.oracle import PRIME, quotient_traces
from dbflab.partitions import partitions_of

HHL_SHAPES = [(4, 1), (3, 2, 1), (4, 2), (3, 3, 1), (4, 2, 1)]
ORACLE_CASES = [(2, 1, 3), (1, 1, 4), (2, 0, 4), (2, 1, 4)]


def best_of(fn, repeat: int) -> tuple[float, object]:
    out = fn()
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def hhl_all_contents(mu, use_numba):
    n = sum(mu)
    res = []
    for content in partitions_of(n):
        hist, _ = kernels.hhl_histogram(mu, content, use_numba=use_numba)
        res.append(hist)
    return res


def bench_hhl(shapes, repeat):
    rows = []
    for mu in shapes:
        tj, a = best_of(lambda: hhl_all_contents(mu, True), repeat)
        tn, b = best_of(lambda: hhl_all_contents(mu, False), repeat)
        same = all(np.array_equal(x, y) for x, y in zip(a, b))
        rows.append((f"hhl {mu}", tj, tn, same))
    return rows


def bench_oracle(cases, repeat):
    rows = []
    for k, j, n in cases:
        tj, a = best_of(lambda: quotient_traces(k, j, n, PRIME, use_numba=True), repeat)
        tn, b = best_of(lambda: quotient_traces(k, j, n, PRIME, use_numba=False), repeat)
        rows.append((f"oracle (k,j,n)=({k},{j},{n})", tj, tn, a[:2] == b[:2]))
    return rows


def bench_exact(cases):
    """The default exact-rational oracle, timed once, against the modular result."""
    rows = []
    for k, j, n in cases:
        te, a = best_of(lambda: quotient_traces(k, j, n, 0), 1)
        b = quotient_traces(k, j, n, PRIME)
        rows.append((f"exact (k,j,n)=({k},{j},{n})", te, a[:2] == b[:2]))
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="small shapes only")
    args = ap.parse_args(argv)
    shapes = HHL_SHAPES[:2] if args.quick else HHL_SHAPES
    cases = ORACLE_CASES[:2] if args.quick else ORACLE_CASES
    rows = bench_hhl(shapes, args.repeat) + bench_oracle(cases, args.repeat)
    print(f"{'kernel':<28} {'numba s':>10} {'numpy s':>10} {'speedup':>8}  agree")
    for name, tj, tn, same in rows:
        print(f"{name:<28} {tj:>10.4f} {tn:>10.4f} {tn / tj:>8.1f}  {same}")
    exact = bench_exact(cases)
    print(f"\n{'oracle, exact rationals':<28} {'seconds':>10}  agrees with modular")
    for name, te, same in exact:
        print(f"{name:<28} {te:>10.4f}  {same}")
    return 0 if all(r[3] for r in rows) and all(r[2] for r in exact) else 1


if __name__ == "__main__":
    raise SystemExit(main())
