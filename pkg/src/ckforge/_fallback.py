"""Pure-Python versions of the compiled kernels in ``_kernels.pyx``.

Both modules expose the same functions with the same results; the
benchmark in ``benchmarks/bench_kernels.py`` compares them.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np


def shuffle_words(u: tuple, v: tuple) -> dict:
    """Multiset of interleavings of ``u`` and ``v`` as {word: multiplicity}."""
    m, n = len(u), len(v)
    if m == 0:
        return {v: 1}
    if n == 0:
        return {u: 1}
    out: dict = {}
    total = m + n
    get = out.get
    for pos in combinations(range(total), m):
        w = [None] * total
        it_v = iter(v)
        k = 0
        for i in range(total):
            if k < m and pos[k] == i:
                w[i] = u[k]
                k += 1
            else:
                w[i] = next(it_v)
        t = tuple(w)
        out[t] = get(t, 0) + 1
    return out


def _mulmod_ld(a, b, p):
    # a*b mod p for uint64 arrays with p < 2**62, via an 80-bit long double quotient
    q = (a.astype(np.longdouble) * b.astype(np.longdouble) / np.longdouble(p)).astype(np.uint64)
    r = (a * b - q * np.uint64(p)).astype(np.int64)
    r = np.where(r < 0, r + np.int64(p), r)
    r = np.where(r >= np.int64(p), r - np.int64(p), r)
    return r.astype(np.uint64)


def rank_mod_p(mat, p: int) -> int:
    """Rank of an integer matrix (entries already reduced to [0, p)) over GF(p)."""
    a = np.array(mat, dtype=np.uint64, copy=True)
    if a.size == 0:
        return 0
    rows, cols = a.shape
    if rows > cols:
        a = np.ascontiguousarray(a.T)
        rows, cols = cols, rows
    pp = np.uint64(p)
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(a[rank:, c])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, c]), -1, p)
        a[rank, c:] = _mulmod_ld(a[rank, c:], np.full(cols - c, inv, dtype=np.uint64), p)
        below = rank + 1 + np.nonzero(a[rank + 1:, c])[0]
        if below.size:
            factors = a[below, c][:, None]
            prod = _mulmod_ld(np.broadcast_to(factors, (below.size, cols - c)),
                              np.broadcast_to(a[rank, c:], (below.size, cols - c)), p)
            sub = a[below, c:]
            a[below, c:] = np.where(sub >= prod, sub - prod, sub + (pp - prod))
        rank += 1
    return rank
