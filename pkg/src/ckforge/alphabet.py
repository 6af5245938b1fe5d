"""Graded generators, words over them, and Lyndon combinatorics.

Letters are plain ints so that words are cheap hashable tuples and the
compiled kernels can consume them directly.  ``tau(i)`` is encoded as ``i``
and ``sigma(k)`` as ``SIGMA_BASE + k``; integer order therefore realises the
generator order  t1 < t2 < ... < ts < s3 < s5 < ...
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

SIGMA_BASE = 1 << 20

Word = tuple  # tuple[int, ...]; the empty tuple is the unit word


class Generator(int):
    """A free generator, either ``Tau(i)`` (degree 1) or ``Sigma(k)`` (k odd, >= 3)."""

    def __new__(cls, code: int) -> "Generator":
        code = int(code)
        if code <= 0:
            raise ValueError(f"invalid generator code {code}")
        if code >= SIGMA_BASE:
            k = code - SIGMA_BASE
            if k < 3 or k % 2 == 0:
                raise ValueError(f"sigma generators need odd k >= 3, got {k}")
        return super().__new__(cls, code)

    @classmethod
    def tau(cls, i: int) -> "Generator":
        if not 1 <= i < SIGMA_BASE:
            raise ValueError(f"tau index out of range: {i}")
        return cls(i)

    @classmethod
    def sigma(cls, k: int) -> "Generator":
        return cls(SIGMA_BASE + k)

    @property
    def kind(self) -> str:
        return "sigma" if self >= SIGMA_BASE else "tau"

    @property
    def index(self) -> int:
        return int(self) - SIGMA_BASE if self >= SIGMA_BASE else int(self)

    @property
    def degree(self) -> int:
        return letter_degree(self)

    def __repr__(self) -> str:
        return letter_name(self)

    __str__ = __repr__


def tau(i: int) -> int:
    return int(Generator.tau(i))


def sigma(k: int) -> int:
    return int(Generator.sigma(k))


def letter_degree(a: int) -> int:
    return a - SIGMA_BASE if a >= SIGMA_BASE else 1


def letter_name(a: int) -> str:
    a = int(a)
    return f"s{a - SIGMA_BASE}" if a >= SIGMA_BASE else f"t{a}"


def parse_letter(text: str) -> int:
    text = text.strip()
    if len(text) < 2 or text[0] not in "ts" or not text[1:].isdigit():
        raise ValueError(f"bad generator name {text!r}")
    n = int(text[1:])
    return int(Generator.tau(n) if text[0] == "t" else Generator.sigma(n))


def word_degree(w: Sequence[int]) -> int:
    return sum(a - SIGMA_BASE if a >= SIGMA_BASE else 1 for a in w)


def format_word(w: Sequence[int]) -> str:
    if not w:
        return "1"
    return ".".join(letter_name(a) for a in w)


def parse_word(text: str) -> Word:
    text = text.strip()
    if text == "1":
        return ()
    return tuple(parse_letter(part) for part in text.split("."))


def alphabet(s: int, d: int) -> list[int]:
    """Generators of degree <= d for ``s`` primes, in increasing order."""
    if s < 1:
        raise ValueError("need at least one prime")
    letters = [tau(i) for i in range(1, s + 1)]
    letters += [sigma(k) for k in range(3, d + 1, 2)]
    return [int(a) for a in letters]


def _words_of_degree(letters: Sequence[int], v: int) -> Iterator[Word]:
    # letters are sorted, so depth-first emission is already lexicographic
    if v == 0:
        yield ()
        return
    for a in letters:
        da = letter_degree(a)
        if da <= v:
            for rest in _words_of_degree(letters, v - da):
                yield (a,) + rest


def enumerate_words(s: int, d: int, v: int) -> list[Word]:
    """All words over the degree-<=d generators with total degree exactly ``v``."""
    if v < 0:
        return []
    return list(_words_of_degree(alphabet(s, d), v))


def is_lyndon(w: Sequence[int]) -> bool:
    if len(w) == 0:
        raise ValueError("Lyndon words are non-empty")
    w = tuple(w)
    return all(w < w[i:] + w[:i] for i in range(1, len(w)))


def lyndon_words_over(letters: Sequence[int], max_degree: int) -> list[Word]:
    """Lyndon words over ``letters`` of degree <= max_degree, ordered by (degree, word).

    Prenecklace recursion (Fredricksen-Kessler-Maiorana) pruned by degree:
    a prefix survives while it is a prenecklace, and is Lyndon when its
    period equals its length.
    """
    letters = sorted(set(letters))
    out: list[Word] = []
    prefix: list[int] = []

    def extend(period: int, deg: int) -> None:
        n = len(prefix)
        for a in letters:
            da = letter_degree(a)
            if deg + da > max_degree:
                break
            if n:
                ref = prefix[n - period]
                if a < ref:
                    continue
                new_period = period if a == ref else n + 1
            else:
                new_period = 1
            prefix.append(a)
            if new_period == n + 1:
                out.append(tuple(prefix))
            extend(new_period, deg + da)
            prefix.pop()

    extend(1, 0)
    out.sort(key=lambda u: (word_degree(u), u))
    return out


def lyndon_words(s: int, d: int, v_max: int) -> list[Word]:
    return lyndon_words_over(alphabet(s, d), v_max)


def cfl_factorize(w: Sequence[int]) -> list[Word]:
    """Chen-Fox-Lyndon factorization (Duval); factors are weakly decreasing."""
    w = tuple(w)
    n = len(w)
    factors = []
    i = 0
    while i < n:
        j, k = i + 1, i
        while j < n and w[k] <= w[j]:
            k = i if w[k] < w[j] else k + 1
            j += 1
        while i <= k:
            factors.append(w[i:i + j - k])
            i += j - k
    return factors


@lru_cache(maxsize=None)
def cfl_grouped(w: Word) -> tuple[tuple[Word, int], ...]:
    """CFL factors with multiplicities, e.g. (t2)(t1)(t1) -> ((t2, 1), (t1, 2))."""
    return tuple((l, len(list(g))) for l, g in itertools.groupby(cfl_factorize(w)))


def sort_words(words: Iterable[Word]) -> list[Word]:
    """Canonical order: graded, then lexicographic in the generator order."""
    return sorted(words, key=lambda u: (word_degree(u), u))
