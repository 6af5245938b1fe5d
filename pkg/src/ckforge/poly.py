"""Sparse commutative polynomials with packed exponent vectors.

A monomial is a single Python int holding one 9-bit slot per variable: 8
bits of exponent plus a guard bit, so monomial multiplication is integer
addition and an exponent overflow shows up as a set guard bit.  The
coefficient ring is whatever the values support (rationals, ShuffleElem,
or another Poly); zero coefficients are never stored.
"""

from __future__ import annotations

from typing import Callable, Hashable, Iterable, Iterator, Sequence

from ._rational import Q

SLOT = 9
EXP_MASK = 0xFF


class ExponentOverflow(ArithmeticError):
    pass


class VarSpace:
    """An ordered list of named, graded variables; may grow on demand."""

    def __init__(self, name: str, labels: Iterable[Hashable] = (), degrees: Iterable[int] = (),
                 namer: Callable[[Hashable], str] = str, grader: Callable[[Hashable], int] | None = None):
        self.name = name
        self.labels: list = []
        self.degrees: list[int] = []
        self.index: dict = {}
        self._namer = namer
        self._grader = grader
        self.guard = 0
        for lab, deg in zip(labels, degrees):
            self.add(lab, deg)

    def __len__(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"VarSpace({self.name!r}, {len(self)} vars)"

    def add(self, label, degree: int | None = None) -> int:
        slot = self.index.get(label)
        if slot is not None:
            return slot
        if degree is None:
            if self._grader is None:
                raise KeyError(f"unknown variable {label!r} in {self.name}")
            degree = self._grader(label)
        slot = len(self.labels)
        self.labels.append(label)
        self.degrees.append(degree)
        self.index[label] = slot
        self.guard |= 1 << (SLOT * slot + 8)
        return slot

    def slot(self, label) -> int:
        return self.add(label)

    def var_name(self, slot: int) -> str:
        return self._namer(self.labels[slot])

    def monomial(self, exps: dict) -> int:
        """Pack {label: exponent} into a monomial key."""
        m = 0
        for lab, e in exps.items():
            if e < 0 or e > EXP_MASK:
                raise ExponentOverflow(f"exponent {e} out of range")
            if e:
                m += e << (SLOT * self.slot(lab))
        return m


def unpack(m: int) -> Iterator[tuple[int, int]]:
    """Yield (slot, exponent) pairs of a packed monomial."""
    slot = 0
    while m:
        e = m & EXP_MASK
        if e:
            yield slot, e
        m >>= SLOT
        slot += 1


def mono_degree(space: VarSpace, m: int) -> int:
    degs = space.degrees
    return sum(degs[i] * e for i, e in unpack(m))


def mono_divides(a: int, b: int) -> bool:
    """True when monomial a divides monomial b."""
    while a:
        if (a & EXP_MASK) > (b & EXP_MASK):
            return False
        a >>= SLOT
        b >>= SLOT
    return True


class Poly:
    """Polynomial over ``space`` stored as {packed monomial: coefficient}."""

    __slots__ = ("space", "terms")

    def __init__(self, space: VarSpace, terms: dict | None = None):
        self.space = space
        self.terms = terms if terms is not None else {}

    # -- construction -------------------------------------------------------
    @classmethod
    def const(cls, space: VarSpace, c) -> "Poly":
        return cls(space, {0: c} if c else {})

    @classmethod
    def var(cls, space: VarSpace, label, coeff=None) -> "Poly":
        return cls(space, {1 << (SLOT * space.slot(label)): Q(1) if coeff is None else coeff})

    @classmethod
    def from_terms(cls, space: VarSpace, items: Iterable[tuple[dict, object]]) -> "Poly":
        out: dict = {}
        for exps, c in items:
            m = space.monomial(exps)
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return cls(space, out)

    def _new(self, terms: dict) -> "Poly":
        return type(self)(self.space, terms)

    # -- queries --------------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly) and self.space is other.space:
            return self.terms == other.terms
        if not other:
            return not self.terms
        return self.terms == {0: other}

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def exponents(self, m: int) -> dict:
        return {self.space.labels[i]: e for i, e in unpack(m)}

    def degree_of(self, m: int) -> int:
        return mono_degree(self.space, m)

    def degrees(self) -> set[int]:
        return {mono_degree(self.space, m) for m in self.terms}

    def variables(self) -> set:
        seen = 0
        for m in self.terms:
            seen |= m
        return {self.space.labels[i] for i, _ in unpack(_spread(seen))}

    def constant(self):
        return self.terms.get(0, 0)

    def degree_in(self, label) -> int:
        slot = self.space.index.get(label)
        if slot is None:
            return 0
        shift = SLOT * slot
        return max(((m >> shift) & EXP_MASK for m in self.terms), default=0)

    # -- arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        # a Poly over another space is a coefficient, i.e. a constant here
        if isinstance(other, Poly) and other.space is self.space:
            return other
        return self._new({0: other} if other else {})

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            old = out.get(m)
            if old is None:
                out[m] = c
            else:
                s = old + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return self._new(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return self._new({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def scale(self, c) -> "Poly":
        if not c:
            return self._new({})
        out = {}
        for m, a in self.terms.items():
            v = a * c
            if v:
                out[m] = v
        return self._new(out)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly) or other.space is not self.space:
            return self.scale(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                k = ma + mb
                old = get(k)
                out[k] = ca * cb if old is None else old + ca * cb
        guard = self.space.guard
        clean = {}
        for k, c in out.items():
            if c:
                if k & guard:
                    raise ExponentOverflow("exponent exceeded 255 in product")
                clean[k] = c
        return self._new(clean)

    def __rmul__(self, other) -> "Poly":
        return self.scale(other)

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power")
        if n == 0:
            return self._new({0: Q(1)})
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def map_coeffs(self, fn) -> "Poly":
        out = {}
        for m, c in self.terms.items():
            v = fn(c)
            if v:
                out[m] = v
        return self._new(out)

    def sorted_terms(self) -> list[tuple[int, object]]:
        """Terms in a deterministic order: by degree, then by exponent vector."""
        labels_n = len(self.space)
        return sorted(self.terms.items(),
                      key=lambda mc: (mono_degree(self.space, mc[0]), _lex_key(mc[0], labels_n)))

    def format_monomial(self, m: int) -> str:
        if m == 0:
            return "1"
        parts = []
        for i, e in unpack(m):
            name = self.space.var_name(i)
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{self.format_monomial(m)}" for m, c in self.sorted_terms())


def _spread(m: int) -> int:
    # keep a nonzero marker in each slot that is nonzero in m
    out = 0
    slot = 0
    while m:
        if m & EXP_MASK:
            out |= 1 << (SLOT * slot)
        m >>= SLOT
        slot += 1
    return out


def _lex_key(m: int, n: int) -> tuple:
    exps = [0] * max(n, 1)
    for i, e in unpack(m):
        if i >= len(exps):
            exps.extend([0] * (i + 1 - len(exps)))
        exps[i] = e
    return tuple(-e for e in exps)


def exponent_vector(m: int, n: int) -> tuple[int, ...]:
    exps = [0] * n
    for i, e in unpack(m):
        exps[i] = e
    return tuple(exps)


def pack(exps: Sequence[int]) -> int:
    m = 0
    for i, e in enumerate(exps):
        if e:
            m += e << (SLOT * i)
    return m
