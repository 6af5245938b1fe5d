"""The shuffle Hopf algebra on words: product, coproduct, text format."""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from typing import Iterable, Mapping

from ._backend import shuffle_words
from ._rational import Q, format_rational, parse_rational
from .alphabet import Word, format_word, parse_word, word_degree


@lru_cache(maxsize=1 << 16)
def _shuffle_pair(u: Word, v: Word) -> tuple:
    if u > v:
        u, v = v, u
    return tuple(shuffle_words(u, v).items())


class ShuffleElem:
    """A finite rational combination of basis elements f_w.

    Treated as immutable once built; ``terms`` never stores zeros.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Word, object] | None = None):
        clean = {}
        if terms:
            for w, c in terms.items():
                c = Q(c)
                if c:
                    clean[tuple(w)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "ShuffleElem":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def word(cls, w: Iterable[int], coeff=1) -> "ShuffleElem":
        return cls({tuple(w): coeff})

    @classmethod
    def one(cls) -> "ShuffleElem":
        return cls({(): 1})

    @classmethod
    def zero(cls) -> "ShuffleElem":
        return cls._raw({})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, ShuffleElem):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other) -> "ShuffleElem":
        other = _coerce(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, 0) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return ShuffleElem._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "ShuffleElem":
        return ShuffleElem._raw({w: -c for w, c in self.terms.items()})

    def __sub__(self, other) -> "ShuffleElem":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "ShuffleElem":
        return _coerce(other) - self

    def __mul__(self, other) -> "ShuffleElem":
        if not isinstance(other, ShuffleElem):
            c = Q(other)
            if not c:
                return ShuffleElem.zero()
            return ShuffleElem._raw({w: a * c for w, a in self.terms.items()})
        return shuffle(self, other)

    __rmul__ = __mul__

    def __truediv__(self, c) -> "ShuffleElem":
        return self * (1 / Q(c))

    def __pow__(self, n: int) -> "ShuffleElem":
        result = ShuffleElem.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def degrees(self) -> set[int]:
        return {word_degree(w) for w in self.terms}

    def homogeneous_parts(self) -> dict[int, "ShuffleElem"]:
        parts: dict[int, dict] = defaultdict(dict)
        for w, c in self.terms.items():
            parts[word_degree(w)][w] = c
        return {k: ShuffleElem._raw(v) for k, v in sorted(parts.items())}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def max_letter_degree(self) -> int:
        from .alphabet import letter_degree

        return max((letter_degree(a) for w in self.terms for a in w), default=0)

    def __repr__(self) -> str:
        return f"ShuffleElem({format_shuffle(self)!r})"

    def __str__(self) -> str:
        return format_shuffle(self)


def _coerce(x) -> ShuffleElem:
    if isinstance(x, ShuffleElem):
        return x
    return ShuffleElem({(): x})


def f(*letters: int) -> ShuffleElem:
    """Basis element f_w for the word spelled by ``letters``."""
    return ShuffleElem.word(letters)


def shuffle(a: ShuffleElem, b: ShuffleElem) -> ShuffleElem:
    out: dict = {}
    get = out.get
    for u, cu in a.terms.items():
        for v, cv in b.terms.items():
            c = cu * cv
            for w, m in _shuffle_pair(u, v):
                out[w] = get(w, 0) + c * m
    return ShuffleElem._raw({w: c for w, c in out.items() if c})


class TensorElem:
    """Element of O(U) (x) O(U) as {(w1, w2): coefficient}."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[Word, Word], object] | None = None):
        self.terms = {k: Q(c) for k, c in (terms or {}).items() if c}

    def __eq__(self, other) -> bool:
        return isinstance(other, TensorElem) and self.terms == other.terms

    def __add__(self, other: "TensorElem") -> "TensorElem":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return TensorElem(out)

    def __mul__(self, other: "TensorElem") -> "TensorElem":
        # componentwise shuffle
        out: dict = defaultdict(int)
        for (u1, u2), c in self.terms.items():
            for (v1, v2), e in other.terms.items():
                left = _shuffle_pair(u1, v1)
                right = _shuffle_pair(u2, v2)
                for w1, m1 in left:
                    for w2, m2 in right:
                        out[(w1, w2)] += c * e * m1 * m2
        return TensorElem(out)

    def __repr__(self) -> str:
        parts = [f"{format_rational(c)}*{format_word(a)}|{format_word(b)}"
                 for (a, b), c in sorted(self.terms.items())]
        return "TensorElem(" + " + ".join(parts) + ")"


def coproduct(a: ShuffleElem) -> TensorElem:
    """Deconcatenation: f_w -> sum over w = w1 w2 of f_w1 (x) f_w2."""
    out: dict = defaultdict(int)
    for w, c in a.terms.items():
        for i in range(len(w) + 1):
            out[(w[:i], w[i:])] += c
    return TensorElem(out)


def apply_left(t: TensorElem, fn) -> TensorElem:
    """(fn (x) id) for a linear map ``fn`` from ShuffleElem to TensorElem, giving a 3-tensor."""
    out: dict = defaultdict(int)
    for (w1, w2), c in t.terms.items():
        for (a, b), e in fn(ShuffleElem.word(w1)).terms.items():
            out[(a, b, w2)] += c * e
    return out


def apply_right(t: TensorElem, fn) -> dict:
    out: dict = defaultdict(int)
    for (w1, w2), c in t.terms.items():
        for (a, b), e in fn(ShuffleElem.word(w2)).terms.items():
            out[(w1, a, b)] += c * e
    return out


def format_shuffle(a: ShuffleElem) -> str:
    """Canonical text: ``1*t1.t2 + -1/2*t2.t1``; the zero element is ``0``."""
    if not a.terms:
        return "0"
    words = sorted(a.terms, key=lambda w: (word_degree(w), w))
    return " + ".join(f"{format_rational(a.terms[w])}*{format_word(w)}" for w in words)


def parse_shuffle(text: str) -> ShuffleElem:
    text = text.strip()
    if text == "0":
        return ShuffleElem.zero()
    terms: dict = defaultdict(int)
    for part in text.split(" + "):
        coeff, _, word = part.strip().partition("*")
        terms[parse_word(word)] += parse_rational(coeff)
    return ShuffleElem(terms)
