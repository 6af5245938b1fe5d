"""Exact rational scalar type shared by every module."""

from __future__ import annotations

try:
    from gmpy2 import mpq as Q
    from gmpy2 import mpz as Z
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Q

    Z = int


def parse_rational(text: str):
    text = text.strip()
    if "/" in text:
        num, den = text.split("/")
        return Q(int(num), int(den))
    return Q(int(text))


def format_rational(q) -> str:
    q = Q(q)
    if q.denominator == 1:
        return str(int(q.numerator))
    return f"{int(q.numerator)}/{int(q.denominator)}"


ZERO = Q(0)
ONE = Q(1)
HALF = Q(1, 2)
