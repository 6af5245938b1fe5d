"""Polynomial presentation of the shuffle algebra on Lyndon words.

Shuffle algebras are free commutative on Lyndon words: sending f_l to a
variable X_l for each Lyndon word l is a ring isomorphism onto Q[X_l].
Conversion works by triangular rewriting.  For a word w with CFL
factorization l_1^{i_1} ... l_k^{i_k},

    prod_j f_{l_j}^{sh i_j} / prod_j i_j!  =  f_w + (lexicographically smaller words)

with all words sharing the letters of w, so f_w is that product minus the
(already converted) smaller words.
"""

from __future__ import annotations

import math
import os
from pathlib import Path
from typing import Mapping

from ._rational import Q, format_rational, parse_rational
from .alphabet import Word, cfl_grouped, format_word, letter_degree, parse_word, word_degree
from .poly import SLOT, Poly, VarSpace, unpack
from .shuffle import ShuffleElem, _shuffle_pair

CACHE_VERSION = "ckforge-lyndon-cache v1"


def _lyndon_name(w: Word) -> str:
    return f"X[{format_word(w)}]"


# one global registry so every LyndonPoly shares slots
LYNDON = VarSpace("lyndon", namer=_lyndon_name, grader=word_degree)


class DepthError(ValueError):
    pass


class LyndonPoly(Poly):
    """Polynomial with rational coefficients in variables X_l, l Lyndon."""

    __slots__ = ()

    def __init__(self, space: VarSpace = LYNDON, terms: dict | None = None):
        super().__init__(LYNDON, terms)

    @classmethod
    def x(cls, w: Word) -> "LyndonPoly":
        return cls(LYNDON, {1 << (SLOT * LYNDON.slot(tuple(w))): Q(1)})

    @classmethod
    def constant_poly(cls, c) -> "LyndonPoly":
        c = Q(c)
        return cls(LYNDON, {0: c} if c else {})

    def evaluate(self, x: Mapping[Word, object]):
        return evaluate(self, x)

    def variables(self) -> set:
        return set(super().variables())

    def __str__(self) -> str:
        return format_lyndon(self)

    __repr__ = __str__


def format_lyndon(p: Poly) -> str:
    """Text form ``1*X[t1]*X[t2] + -1*X[t1.t2]``; zero is ``0``."""
    if not p.terms:
        return "0"
    parts = []
    labels = p.space.labels
    for m, c in _ordered(p):
        mono = "*".join(_lyndon_name(w) if e == 1 else f"{_lyndon_name(w)}^{e}"
                        for w, e in sorted((labels[i], e) for i, e in unpack(m)))
        parts.append(format_rational(c) if m == 0 else f"{format_rational(c)}*{mono}")
    return " + ".join(parts)


def _ordered(p: Poly):
    labels = LYNDON.labels

    def key(mc):
        m = mc[0]
        vars_ = sorted((labels[i], e) for i, e in unpack(m))
        return (sum(word_degree(w) * e for w, e in vars_), vars_)

    return sorted(p.terms.items(), key=key)


def parse_lyndon(text: str) -> LyndonPoly:
    text = text.strip()
    out = LyndonPoly()
    if text == "0":
        return out
    for part in text.split(" + "):
        pieces = part.strip().split("*")
        term = LyndonPoly.constant_poly(parse_rational(pieces[0]))
        for factor in pieces[1:]:
            name, _, exp = factor.partition("^")
            if not (name.startswith("X[") and name.endswith("]")):
                raise ValueError(f"bad Lyndon variable {factor!r}")
            term = term * LyndonPoly.x(parse_word(name[2:-1])) ** (int(exp) if exp else 1)
        out = out + term
    return out


def evaluate(p: Poly, x: Mapping[Word, object]):
    """Evaluate at an assignment {Lyndon word: rational}."""
    labels = p.space.labels
    cache: dict[int, object] = {}
    total = Q(0)
    for m, c in p.terms.items():
        val = c
        for i, e in unpack(m):
            v = cache.get(i)
            if v is None:
                w = labels[i]
                if w not in x:
                    raise KeyError(f"no value for Lyndon variable {_lyndon_name(w)}")
                v = cache[i] = x[w]
            val = val * v ** e
        total += val
    return total


def _leading_product(w: Word) -> dict:
    """prod_j f_{l_j}^{sh i_j} / prod_j i_j! as {word: coefficient}."""
    acc: dict = {(): Q(1)}
    denom = 1
    for l, mult in cfl_grouped(w):
        denom *= math.factorial(mult)
        for _ in range(mult):
            nxt: dict = {}
            get = nxt.get
            for u, cu in acc.items():
                for v, m in _shuffle_pair(u, l):
                    nxt[v] = get(v, 0) + cu * m
            acc = nxt
    if denom != 1:
        inv = Q(1, denom)
        acc = {u: c * inv for u, c in acc.items()}
    return acc


class LyndonConverter:
    """Memoized word -> LyndonPoly conversion with an optional disk cache."""

    def __init__(self, cache_dir: str | os.PathLike | None = None):
        self.memo: dict[Word, LyndonPoly] = {(): LyndonPoly.constant_poly(1)}
        self.cache_dir = Path(cache_dir) if cache_dir else None
        self._dirty: dict[Word, LyndonPoly] = {}
        self.conversions = 0

    def convert_word(self, w: Word, d: int | None = None) -> LyndonPoly:
        w = tuple(w)
        hit = self.memo.get(w)
        if hit is not None:
            return hit
        if d is not None and any(letter_degree(a) > d for a in w):
            raise DepthError("generator exceeds depth bound")
        # explicit stack: a word is finished once all smaller words it needs are
        stack = [w]
        pending: dict[Word, dict] = {}
        memo = self.memo
        while stack:
            u = stack[-1]
            if u in memo:
                stack.pop()
                continue
            groups = cfl_grouped(u)
            if len(groups) == 1 and groups[0][1] == 1:
                memo[u] = LyndonPoly.x(u)
                self._dirty[u] = memo[u]
                stack.pop()
                continue
            prod = pending.get(u)
            if prod is None:
                prod = pending[u] = _leading_product(u)
            missing = [v for v in prod if v != u and v not in memo]
            if missing:
                stack.extend(missing)
                continue
            mono = 0
            denom = 1
            for l, mult in groups:
                mono += mult << (SLOT * LYNDON.slot(l))
                denom *= math.factorial(mult)
            acc = dict()
            acc[mono] = Q(1, denom)
            for v, c in prod.items():
                if v == u:
                    continue
                for m2, c2 in memo[v].terms.items():
                    s = acc.get(m2, 0) - c * c2
                    if s:
                        acc[m2] = s
                    else:
                        acc.pop(m2, None)
            res = LyndonPoly(LYNDON, acc)
            memo[u] = res
            self._dirty[u] = res
            del pending[u]
            self.conversions += 1
            stack.pop()
        return memo[w]

    def convert(self, a: ShuffleElem, d: int | None = None) -> LyndonPoly:
        out = LyndonPoly()
        terms: dict = {}
        for w, c in a.terms.items():
            for m, c2 in self.convert_word(w, d).terms.items():
                s = terms.get(m, 0) + c * c2
                if s:
                    terms[m] = s
                else:
                    terms.pop(m, None)
        out.terms = terms
        return out

    # -- disk cache ------------------------------------------------------------
    def _path(self, s: int, d: int) -> Path | None:
        if self.cache_dir is None:
            return None
        return self.cache_dir / f"lyndon-s{s}-d{d}.tsv"

    def load(self, s: int, d: int) -> int:
        """Read cached conversions; a missing or stale file is ignored."""
        path = self._path(s, d)
        if path is None or not path.exists():
            return 0
        n = 0
        with path.open() as fh:
            if fh.readline().strip() != CACHE_VERSION:
                return 0
            for line in fh:
                word, _, poly = line.rstrip("\n").partition("\t")
                if not poly:
                    continue
                w = parse_word(word)
                if w not in self.memo:
                    self.memo[w] = parse_lyndon(poly)
                    n += 1
        return n

    def save(self, s: int, d: int) -> Path | None:
        path = self._path(s, d)
        if path is None or not self._dirty:
            return path
        path.parent.mkdir(parents=True, exist_ok=True)
        fresh = not path.exists()
        if not fresh:
            with path.open() as fh:
                fresh = fh.readline().strip() != CACHE_VERSION
        mode = "w" if fresh else "a"
        with path.open(mode) as fh:
            if fresh:
                fh.write(CACHE_VERSION + "\n")
            for w, p in self._dirty.items():
                if w:
                    fh.write(f"{format_word(w)}\t{format_lyndon(p)}\n")
        self._dirty.clear()
        return path


_default: LyndonConverter | None = None


def default_converter() -> LyndonConverter:
    global _default
    if _default is None:
        _default = LyndonConverter(os.environ.get("CKFORGE_CACHE") or None)
    return _default


def set_cache_dir(path: str | os.PathLike | None) -> LyndonConverter:
    """Replace the process-wide converter with one bound to ``path``."""
    global _default
    _default = LyndonConverter(path)
    return _default


def cache_files(path: str | os.PathLike) -> list[Path]:
    p = Path(path)
    return sorted(p.glob("lyndon-s*-d*.tsv")) if p.is_dir() else []


def to_lyndon_poly(a: ShuffleElem, d: int | None = None) -> LyndonPoly:
    """Image of ``a`` under f_l -> X_l; ``d`` bounds the letter degrees."""
    return default_converter().convert(a, d)
