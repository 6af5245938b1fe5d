"""Randomized upper bound for the rank of ker theta#_{d,v} (specialize, then rank)."""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass, field
from math import lcm
from typing import Mapping

import numpy as np

from . import _backend
from ._rational import Q
from .alphabet import format_word, lyndon_words
from .linalg import SparseRatMatrix, random_point, random_primes, rank, rank_mod_p_dense
from .lyndon import evaluate
from .poly import Poly, unpack
from .theta import ColumnBuilder, PLVariable, _theta_lyndon, phi_monomials, phi_space, pl_monomials


class DegenerateSample(RuntimeError):
    pass


def lyndon_point(s: int, d: int, seed: int) -> dict:
    """Seeded integer point on every Lyndon variable of degree <= d."""
    return random_point(lyndon_words(s, d, d), seed)


def point_hash(x: Mapping) -> str:
    h = hashlib.sha256()
    for w in sorted(x):
        h.update(f"{format_word(w)}={int(x[w])};".encode())
    return h.hexdigest()[:16]


@dataclass
class SpecializedMatrix:
    """M(theta#_{d,v})(x) with integer entries; column j is scaled by scale**factors[j]."""

    s: int
    d: int
    v: int
    rows: list
    cols: list
    entries: dict  # (r, c) -> int
    scale: int
    factors: list

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def mod_p(self, p: int) -> np.ndarray:
        a = np.zeros(self.shape, dtype=np.uint64)
        for (r, c), v in self.entries.items():
            a[r, c] = v % p
        return a

    def rational(self) -> SparseRatMatrix:
        R, C = self.shape
        return SparseRatMatrix(R, C, {(r, c): Q(v, self.scale ** self.factors[c])
                                      for (r, c), v in self.entries.items()})

    def apply(self, vec) -> list:
        """Exact M(x) @ vec over Q."""
        out = [Q(0)] * len(self.rows)
        for (r, c), v in self.entries.items():
            if vec[c]:
                out[r] += vec[c] * Q(v, self.scale ** self.factors[c])
        return out


def specialized_images(s: int, d: int, x: Mapping) -> dict[int, dict]:
    out = {}
    for n in range(d + 1):
        img = _theta_lyndon(PLVariable(n), s)
        out[n] = {m: evaluate(c, x) for m, c in img.terms.items()}
    return out


def specialize_theta(s: int, d: int, v: int, x: Mapping) -> SpecializedMatrix:
    """Evaluate theta-images at x first, then multiply numerically."""
    images = specialized_images(s, d, x)
    D = 1
    for img in images.values():
        for c in img.values():
            D = lcm(D, int(c.denominator))
    space = phi_space(s)
    int_images = {n: Poly(space, {m: int(c * D) for m, c in img.items() if c}) for n, img in images.items()}
    builder = ColumnBuilder(s, d, int_images)
    rows = phi_monomials(s, d, v)
    cols = pl_monomials(d, v)
    row_index = {m: i for i, m in enumerate(rows)}
    entries = {}
    factors = []
    for j, m in enumerate(cols):
        factors.append(sum(e for _, e in unpack(m)))
        if m == 0:
            entries[(0, j)] = 1
            continue
        for mono, c in builder.column(m).terms.items():
            entries[(row_index[mono], j)] = c
    return SpecializedMatrix(s, d, v, rows, cols, entries, D, factors)


@dataclass
class UpperBound:
    r: int
    provenance: dict = field(default_factory=dict)


def run_upper_bound(s: int, d: int, v: int, seed: int = 0, strategy: str = "modular",
                    retries: int = 3, n_primes: int = 3) -> UpperBound:
    """Dimension of ker M(theta#_{d,v})(x) at a seeded random Lyndon point x."""
    if s < 1 or d < 1 or v < 0:
        raise ValueError("need s >= 1, d >= 1, v >= 0")
    if strategy not in ("modular", "exact"):
        raise ValueError(f"unknown strategy {strategy!r}")
    t0 = time.perf_counter()
    history = []
    for attempt in range(retries + 1):
        point_seed = seed if attempt == 0 else seed * 1000003 + attempt
        x = lyndon_point(s, d, point_seed)
        M = specialize_theta(s, d, v, x)
        R, C = M.shape
        if strategy == "exact":
            rk = rank(M.rational())
            ranks, primes = [rk], []
        else:
            primes = random_primes(n_primes, point_seed)
            ranks = [rank_mod_p_dense(M.mod_p(p), p) for p in primes]
            rk = max(ranks)
        history.append({"seed": point_seed, "ranks": ranks})
        if len(set(ranks)) == 1:
            prov = {
                "s": s, "d": d, "v": v, "seed": seed, "point_seed": point_seed,
                "x_hash": point_hash(x), "n_vars": len(x), "strategy": strategy,
                "rows": R, "cols": C, "primes": primes, "ranks": ranks,
                "attempts": attempt + 1, "backend": _backend.NAME,
                "seconds": round(time.perf_counter() - t0, 3),
            }
            return UpperBound(C - rk, prov)
    raise DegenerateSample(f"degenerate sample: ranks disagree after {retries + 1} attempts: {history}")


@dataclass
class ScanCell:
    d: int
    v: int
    r: int | None
    error: str | None = None


def scan_zero_region(s: int, d_max: int, v_max: int, seed: int = 0, d_min: int = 1,
                     v_min: int = 1, strategy: str = "modular") -> list[ScanCell]:
    """Upper bounds on the grid d_min..d_max x v_min..v_max; per-cell errors are recorded."""
    cells = []
    for d in range(d_min, d_max + 1):
        for v in range(v_min, v_max + 1):
            try:
                cells.append(ScanCell(d, v, run_upper_bound(s, d, v, seed, strategy).r))
            except Exception as exc:  # keep scanning; the cell carries the error
                cells.append(ScanCell(d, v, None, f"{type(exc).__name__}: {exc}"))
    return cells
