"""Exact sparse linear algebra over Q, plus modular rank shadows."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Mapping, Sequence

import gmpy2
import numpy as np

from . import _backend
from ._rational import Q
from .lyndon import LyndonPoly, default_converter, evaluate
from .shuffle import ShuffleElem

PRIME_BITS = 62


class BadPrime(ArithmeticError):
    pass


@dataclass
class SparseRatMatrix:
    rows: int
    cols: int
    entries: dict = field(default_factory=dict)  # (r, c) -> nonzero rational

    def __post_init__(self):
        clean = {}
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            v = Q(v)
            if v:
                clean[(r, c)] = v
        self.entries = clean

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]) -> "SparseRatMatrix":
        n = len(rows)
        m = len(rows[0]) if n else 0
        return cls(n, m, {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row) if v})

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def dense(self) -> list[list]:
        out = [[Q(0)] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def row_dicts(self) -> list[dict]:
        rows: list[dict] = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def transpose(self) -> "SparseRatMatrix":
        return SparseRatMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def matvec(self, vec: Sequence) -> list:
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        out = [Q(0)] * self.rows
        for (r, c), v in self.entries.items():
            if vec[c]:
                out[r] += v * vec[c]
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, SparseRatMatrix) and self.shape == other.shape and self.entries == other.entries

    def mod_p(self, p: int) -> np.ndarray:
        return reduce_mod_p(self.entries, self.rows, self.cols, p)


def reduce_mod_p(entries: Mapping, rows: int, cols: int, p: int) -> np.ndarray:
    """Dense uint64 reduction of rational entries; raises BadPrime on a bad denominator."""
    a = np.zeros((rows, cols), dtype=np.uint64)
    for (r, c), v in entries.items():
        v = Q(v)
        den = int(v.denominator)
        if den % p == 0:
            raise BadPrime(f"bad prime {p}: divides a denominator")
        num = int(v.numerator) % p
        a[r, c] = num if den == 1 else num * pow(den, -1, p) % p
    return a


# -- specialization ---------------------------------------------------------------

def _entry_value(e, x, d):
    if isinstance(e, ShuffleElem):
        e = default_converter().convert(e, d)
    if isinstance(e, LyndonPoly):
        return evaluate(e, x)
    return Q(e)


def specialize(M, x: Mapping, d: int | None = None) -> SparseRatMatrix:
    """Evaluate a symbolic matrix (ShuffleElem/LyndonPoly entries) at a Lyndon point x."""
    R, C = M.shape
    return SparseRatMatrix(R, C, {rc: _entry_value(e, x, d) for rc, e in M.entries.items()})


def random_point(variables: Iterable, seed: int, lo: int = 1, hi: int = 1 << 16) -> dict:
    """Seeded assignment with entries uniform in [lo, hi]; order-independent of input order."""
    from .alphabet import sort_words

    rng = random.Random(seed)
    return {w: gmpy2.mpz(rng.randint(lo, hi)) for w in sort_words(set(variables))}


def random_primes(k: int, seed: int, bits: int = PRIME_BITS) -> list[int]:
    rng = random.Random(f"primes:{seed}")
    out: list[int] = []
    while len(out) < k:
        cand = int(gmpy2.next_prime(rng.getrandbits(bits - 1) | (1 << (bits - 1))))
        if cand < (1 << bits) and cand not in out:
            out.append(cand)
    return out


# -- exact rank / kernel ---------------------------------------------------------------

def _integer_rows(M: SparseRatMatrix) -> list[dict]:
    rows = []
    for row in M.row_dicts():
        if not row:
            continue
        den = 1
        for v in row.values():
            d = int(v.denominator)
            den = den * d // gcd(den, d)
        rows.append({c: int(v * den) for c, v in row.items()})
    return rows


def _content_reduce(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    return {c: v // g for c, v in row.items()} if g > 1 else row


def rank(M: SparseRatMatrix) -> int:
    """Exact rank: sparse fraction-free elimination with a Markowitz-style pivot choice."""
    rows = _integer_rows(M)
    col_rows: dict[int, set] = {}
    live: dict[int, dict] = {}
    for i, row in enumerate(rows):
        live[i] = row
        for c in row:
            col_rows.setdefault(c, set()).add(i)
    r = 0
    while live:
        # sparsest row, then its sparsest column (minimizes fill (r-1)(c-1))
        pi = min(live, key=lambda i: (len(live[i]), i))
        prow = live.pop(pi)
        pc = min(prow, key=lambda c: (len(col_rows[c]), c))
        for c in prow:
            col_rows[c].discard(pi)
        pv = prow[pc]
        for i in list(col_rows[pc]):
            row = live[i]
            a = row[pc]
            g = gcd(a, pv)
            fa, fp = pv // g, a // g
            new = {}
            for c in set(row) | set(prow):
                v = fa * row.get(c, 0) - fp * prow.get(c, 0)
                if v:
                    new[c] = v
            for c in row:
                if c not in new:
                    col_rows[c].discard(i)
            if new:
                new = _content_reduce(new)
                for c in new:
                    col_rows.setdefault(c, set()).add(i)
                live[i] = new
            else:
                del live[i]
        r += 1
    return r


def rref(M: SparseRatMatrix) -> tuple[list[dict], list[int]]:
    """Reduced row echelon form over Q as sparse rows, with pivot columns."""
    rows = [dict(r) for r in M.row_dicts() if r]
    pivots: list[int] = []
    done: list[dict] = []
    for c in range(M.cols):
        idx = next((i for i, r in enumerate(rows) if c in r), None)
        if idx is None:
            continue
        prow = rows.pop(idx)
        inv = 1 / prow[c]
        prow = {k: v * inv for k, v in prow.items()}
        for lst in (rows, done):
            for i, r in enumerate(lst):
                a = r.get(c)
                if a:
                    new = dict(r)
                    for k, v in prow.items():
                        s = new.get(k, 0) - a * v
                        if s:
                            new[k] = s
                        else:
                            new.pop(k, None)
                    lst[i] = new
        rows = [r for r in rows if r]
        done.append(prow)
        pivots.append(c)
    return done, pivots


def kernel_basis(M: SparseRatMatrix) -> list[list]:
    """Basis of the right null space; one vector per non-pivot column."""
    red, pivots = rref(M)
    pivset = set(pivots)
    basis = []
    for f in range(M.cols):
        if f in pivset:
            continue
        vec = [Q(0)] * M.cols
        vec[f] = Q(1)
        for prow, pc in zip(red, pivots):
            a = prow.get(f)
            if a:
                vec[pc] = -a
        basis.append(vec)
    return basis


def rank_mod_p(M, p: int, x: Mapping | None = None, d: int | None = None) -> int:
    """Rank of M mod p; a symbolic M is first specialized at x."""
    if not isinstance(M, SparseRatMatrix):
        if x is None:
            raise ValueError("symbolic matrix needs a point x")
        M = specialize(M, x, d)
    a = M.mod_p(p)
    return rank_mod_p_dense(a, p)


def rank_mod_p_dense(a: np.ndarray, p: int) -> int:
    if p % 2 == 1 and p < (1 << 62):
        return _backend.rank_mod_p(a, p)
    return _backend.kernels_fallback.rank_mod_p(a, p)
