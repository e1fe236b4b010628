#!/usr/bin/env python3
"""Benchmark the compiled payoff kernels against the NumPy fallback.

Usage: python benchmarks/bench_kernels.py [--table-side N] [--batch N]
"""

import argparse
import time

import numpy as np

from qgame import _kernels_np
from qgame.classical import builtin_game

try:
    from qgame import _kernels as _compiled
except ImportError:
    _compiled = None


def unit_vectors(rng, n):
    raw = rng.standard_normal((n, 4))
    return np.ascontiguousarray(raw / np.linalg.norm(raw, axis=1, keepdims=True))


def best_time(fn, repeats=5):
    best = np.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--table-side", type=int, default=512,
                        help="strategies per side for the pair-table benchmark")
    parser.add_argument("--batch", type=int, default=200_000,
                        help="pairs for the elementwise benchmarks")
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    game = builtin_game("chicken")
    a = np.ascontiguousarray(game.a)
    b = np.ascontiguousarray(game.b)
    gamma = np.pi / 3

    grid = unit_vectors(rng, args.table_side)
    ua = unit_vectors(rng, args.batch)
    ub = unit_vectors(rng, args.batch)
    matrix = np.ascontiguousarray(np.diag([1.0, -2.0, 3.0, 0.5]))

    cases = [
        (f"payoff_tables {args.table_side}x{args.table_side}",
         lambda impl: impl.payoff_tables(gamma, grid, grid, a, b)),
        (f"payoff_batch n={args.batch}",
         lambda impl: impl.payoff_batch(gamma, ua, ub, a, b)),
        (f"amplitude_batch n={args.batch}",
         lambda impl: impl.amplitude_batch(gamma, ua, ub)),
        (f"quad_batch n={args.batch}",
         lambda impl: impl.quad_batch(matrix, ua)),
    ]

    print(f"{'kernel':36s} {'numpy':>10s} {'compiled':>10s} {'speedup':>8s}")
    for label, runner in cases:
        t_np = best_time(lambda: runner(_kernels_np))
        if _compiled is None:
            print(f"{label:36s} {t_np * 1e3:9.2f}ms {'n/a':>10s} {'n/a':>8s}")
            continue
        t_c = best_time(lambda: runner(_compiled))
        print(f"{label:36s} {t_np * 1e3:9.2f}ms {t_c * 1e3:9.2f}ms {t_np / t_c:7.2f}x")
        ref = runner(_kernels_np)
        out = runner(_compiled)
        ref = ref if isinstance(ref, tuple) else (ref,)
        out = out if isinstance(out, tuple) else (out,)
        for r, o in zip(ref, out):
            assert np.allclose(np.asarray(r), np.asarray(o), atol=1e-12), label
    if _compiled is None:
        print("\ncompiled extension not available; showing the fallback only")


if __name__ == "__main__":
    main()
