"""Shared brute-force oracles. Deliberately naive and independent of the package code."""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction

import pytest


def brute_shuffle(u: tuple, v: tuple) -> Counter:
    """Every interleaving of u and v, by choosing the positions that u occupies."""
    n = len(u) + len(v)
    out: Counter = Counter()
    for pos in itertools.combinations(range(n), len(u)):
        pset = set(pos)
        iu, iv = iter(u), iter(v)
        out[tuple(next(iu) if i in pset else next(iv) for i in range(n))] += 1
    return out


def brute_words(letters_with_degree: dict, v: int) -> list[tuple]:
    """Words of exact degree v by filtering all letter sequences of length <= v."""
    out = []
    letters = sorted(letters_with_degree)
    for n in range(0, v + 1):
        for w in itertools.product(letters, repeat=n):
            if sum(letters_with_degree[a] for a in w) == v:
                out.append(w)
    return sorted(out)


def brute_is_lyndon(w: tuple) -> bool:
    rots = [w[i:] + w[:i] for i in range(1, len(w))]
    return len(w) > 0 and all(w < r for r in rots)


def dense_rank(rows: list[list]) -> int:
    """Plain Gaussian elimination over Fractions."""
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return 0
    m = len(a[0])
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


@pytest.fixture(autouse=True)
def _isolated_cache(monkeypatch):
    # tests never touch a user cache directory
    monkeypatch.delenv("CKFORGE_CACHE", raising=False)
