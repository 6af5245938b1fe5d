"""Compiled kernels vs the pure-Python fallback.

    python benchmarks/bench_kernels.py [--quick]

Prints one line per kernel and input size with both timings and the speedup.
The largest rank case is the specialized (2, 6, 18) matrix, the hot loop of
the upper-bound algorithm.
"""

from __future__ import annotations

import argparse
import random
import statistics
import time

import numpy as np

from ckforge import _fallback
from ckforge.linalg import random_primes

try:
    from ckforge import _kernels
except ImportError:
    _kernels = None


def _time(fn, repeat):
    out = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        out.append(time.perf_counter() - t)
    return statistics.median(out)


def _row(name, t_py, t_cy):
    speed = f"{t_py / t_cy:8.1f}x" if t_cy else "       -"
    cy = f"{t_cy * 1e3:10.2f}" if t_cy else "         -"
    print(f"{name:<34} {t_py * 1e3:10.2f} {cy} {speed}")


def bench_shuffle(quick: bool):
    rng = random.Random(0)
    for m, n in ([(3, 3), (5, 5)] if quick else [(3, 3), (5, 5), (6, 7), (8, 8)]):
        u = tuple(rng.randint(1, 3) for _ in range(m))
        v = tuple(rng.randint(1, 3) for _ in range(n))
        reps = 3 if m + n > 12 else 20
        t_py = _time(lambda: _fallback.shuffle_words(u, v), reps)
        t_cy = _time(lambda: _kernels.shuffle_words(u, v), reps) if _kernels else None
        if _kernels:
            assert dict(_kernels.shuffle_words(u, v)) == _fallback.shuffle_words(u, v)
        _row(f"shuffle_words |u|={m} |v|={n}", t_py, t_cy)


def bench_rank(quick: bool):
    p = random_primes(1, 0)[0]
    rng = np.random.default_rng(1)
    for n in ([100, 200] if quick else [100, 300, 600]):
        a = rng.integers(0, p, size=(n, n), dtype=np.uint64)
        t_py = _time(lambda: _fallback.rank_mod_p(a, p), 1)
        t_cy = _time(lambda: _kernels.rank_mod_p(a, p), 3) if _kernels else None
        _row(f"rank_mod_p dense {n}x{n}", t_py, t_cy)
    if quick:
        return
    from ckforge.upper_bound import lyndon_point, specialize_theta

    M = specialize_theta(2, 6, 18, lyndon_point(2, 6, 1)).mod_p(p)
    t_py = _time(lambda: _fallback.rank_mod_p(M, p), 1)
    t_cy = _time(lambda: _kernels.rank_mod_p(M, p), 3) if _kernels else None
    if _kernels:
        assert _kernels.rank_mod_p(M, p) == _fallback.rank_mod_p(M, p)
    _row(f"rank_mod_p M(2,6,18) {M.shape[0]}x{M.shape[1]}", t_py, t_cy)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()
    print(f"{'kernel':<34} {'python ms':>10} {'cython ms':>10} {'speedup':>9}")
    bench_shuffle(args.quick)
    bench_rank(args.quick)
    if _kernels is None:
        print("(compiled extension not built; only the fallback was timed)")


if __name__ == "__main__":
    main()
