"""The cocycle map theta# from polylog coordinates to Phi coordinates.

Domain variables are log and Li_n; codomain variables are Phi_{e0}^{tau_i},
Phi_{e1}^{tau_i} (degree 1) and Phi^{sigma_k}_{e1 e0^{k-1}} (degree k).
Images are grouped by Phi-monomial, so the coefficient of
Phi^g Phi_{e0}^{tau_1}^{a_1} ... is the sum of f_{g u} over all distinct
orderings u of the tau-multiset.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterator, Sequence

from ._rational import Q, format_rational
from .alphabet import SIGMA_BASE, letter_degree, letter_name, sigma, tau
from .lyndon import LYNDON, LyndonPoly, default_converter, format_lyndon
from .poly import SLOT, Poly, VarSpace, pack, unpack
from .shuffle import ShuffleElem, format_shuffle

MAX_WEIGHT = 99  # largest Li index / sigma degree given a slot up front


# -- variables -------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class PLVariable:
    """``log`` (n = 0) or ``Li_n`` (n >= 1)."""

    n: int

    @property
    def kind(self) -> str:
        return "log" if self.n == 0 else "Li"

    @property
    def degree(self) -> int:
        return max(self.n, 1)

    def __str__(self) -> str:
        return "log" if self.n == 0 else f"Li{self.n}"


LOG = PLVariable(0)


def Li(n: int) -> PLVariable:
    if n < 1:
        raise ValueError("Li index must be >= 1")
    return PLVariable(n)


@dataclass(frozen=True, order=True)
class PhiVariable:
    """Phi^rho_lambda; ``lam`` is 0 for e0, 1 for e1 (or e1 e0^{k-1} when rho is sigma_k)."""

    rho: int
    lam: int

    def __post_init__(self):
        if self.rho >= SIGMA_BASE and self.lam != 1:
            raise ValueError("sigma variables only pair with e1 e0^(k-1)")

    @property
    def degree(self) -> int:
        return letter_degree(self.rho)

    def __str__(self) -> str:
        if self.rho >= SIGMA_BASE:
            return f"P[{letter_name(self.rho)}]"
        return f"P[{letter_name(self.rho)}|e{self.lam}]"


def parse_pl_variable(text: str) -> PLVariable:
    text = text.strip()
    if text == "log":
        return LOG
    if text.startswith("Li") and text[2:].isdigit():
        return Li(int(text[2:]))
    raise ValueError(f"bad PL variable {text!r}")


PL_SPACE = VarSpace("PL", [PLVariable(n) for n in range(MAX_WEIGHT + 1)],
                    [max(n, 1) for n in range(MAX_WEIGHT + 1)])


@lru_cache(maxsize=None)
def phi_space(s: int) -> VarSpace:
    labels = []
    for i in range(1, s + 1):
        labels += [PhiVariable(tau(i), 0), PhiVariable(tau(i), 1)]
    labels += [PhiVariable(sigma(k), 1) for k in range(3, MAX_WEIGHT + 1, 2)]
    return VarSpace(f"Phi{s}", labels, [v.degree for v in labels])


def phi_var_count(s: int, d: int) -> int:
    """Number of Phi variables relevant in depth d."""
    return 2 * s + len(range(3, d + 1, 2))


def pl_var_count(d: int) -> int:
    return d + 1


# -- polynomial wrappers ------------------------------------------------------------

def _fmt_coeff(c) -> str:
    if isinstance(c, ShuffleElem):
        return format_shuffle(c)
    if isinstance(c, LyndonPoly):
        return format_lyndon(c)
    return format_rational(Q(c))


class PLPoly(Poly):
    """Polynomial in log, Li_n with ShuffleElem or LyndonPoly coefficients."""

    __slots__ = ()

    def __init__(self, space: VarSpace = PL_SPACE, terms: dict | None = None):
        super().__init__(PL_SPACE, terms)

    @classmethod
    def var(cls, v: PLVariable, coeff=None) -> "PLPoly":
        return cls(PL_SPACE, {1 << (SLOT * v.n): ShuffleElem.one() if coeff is None else coeff})

    @classmethod
    def const(cls, c) -> "PLPoly":
        return cls(PL_SPACE, {0: c} if c else {})

    def max_li(self) -> int:
        return max((i for m in self.terms for i, _ in unpack(m)), default=0)

    def total_degrees(self) -> set[int]:
        """PL degree plus coefficient degree, over every homogeneous piece."""
        out = set()
        for m, c in self.terms.items():
            base = self.degree_of(m)
            out |= {base + k for k in c.degrees()}
        return out

    def text(self) -> str:
        return format_poly_lines(self)


class PhiPoly(Poly):
    __slots__ = ()

    def total_degrees(self) -> set[int]:
        out = set()
        for m, c in self.terms.items():
            base = self.degree_of(m)
            out |= {base + k for k in c.degrees()}
        return out


def format_poly_lines(p: Poly) -> str:
    """One ``monomial<TAB>coefficient`` line per term, in monomial order."""
    lines = []
    for m, c in sorted(p.terms.items(), key=lambda mc: _mono_sort_key(p.space, mc[0])):
        lines.append(f"{p.format_monomial(m)}\t{_fmt_coeff(c)}")
    return "\n".join(lines)


def _mono_sort_key(space: VarSpace, m: int):
    n = len(space)
    exps = [0] * n
    for i, e in unpack(m):
        exps[i] = e
    deg = sum(space.degrees[i] * e for i, e in enumerate(exps) if e)
    return (deg, tuple(-e for e in exps))


def pl_monomial_label(m: int) -> str:
    return Poly(PL_SPACE, {m: 1}).format_monomial(m)


def phi_monomial_label(s: int, m: int) -> str:
    return Poly(phi_space(s), {m: 1}).format_monomial(m)


def parse_pl_monomial(text: str) -> int:
    if text.strip() == "1":
        return 0
    m = 0
    for factor in text.strip().split("*"):
        name, _, e = factor.partition("^")
        m += (int(e) if e else 1) << (SLOT * parse_pl_variable(name).n)
    return m


# -- theta images ----------------------------------------------------------------

def _interleavings(counts: Sequence[int], letters: Sequence[int]) -> Iterator[tuple]:
    """Distinct words with letters[i] used counts[i] times (lexicographic)."""
    total = sum(counts)
    if total == 0:
        yield ()
        return
    counts = list(counts)
    for i, a in enumerate(letters):
        if counts[i]:
            counts[i] -= 1
            for rest in _interleavings(counts, letters):
                yield (a,) + rest
            counts[i] += 1


def _image_shape(s: int, k: int) -> Iterator[tuple[int, int, tuple[int, ...]]]:
    """(g, Phi-variable slot of g, tau counts) for each Phi-monomial in theta(Li_k)."""
    for sdeg in range(1, k + 1):
        if sdeg == 1:
            gens = [tau(i) for i in range(1, s + 1)]
        elif sdeg % 2 == 1:
            gens = [sigma(sdeg)]
        else:
            continue
        r = k - sdeg
        for g in gens:
            for combo in itertools.combinations_with_replacement(range(s), r):
                counts = [0] * s
                for j in combo:
                    counts[j] += 1
                yield g, tuple(counts)


def _phi_mono(s: int, g: int, counts: Sequence[int]) -> int:
    space = phi_space(s)
    m = 1 << (SLOT * space.index[PhiVariable(g, 1)])
    for i, a in enumerate(counts):
        if a:
            m += a << (SLOT * space.index[PhiVariable(tau(i + 1), 0)])
    return m


def _check(v: PLVariable, s: int, d: int | None) -> None:
    if s < 1:
        raise ValueError("need at least one prime")
    if d is not None and v.degree > d:
        raise ValueError(f"{v} has degree {v.degree} > depth bound {d}")


@lru_cache(maxsize=None)
def _theta_shuffle(v: PLVariable, s: int) -> PhiPoly:
    space = phi_space(s)
    taus = [tau(i) for i in range(1, s + 1)]
    if v.n == 0:
        return PhiPoly(space, {1 << (SLOT * space.index[PhiVariable(t, 0)]): ShuffleElem.word((t,))
                               for t in taus})
    terms = {}
    for g, counts in _image_shape(s, v.n):
        words = {(g,) + u: 1 for u in _interleavings(counts, taus)}
        terms[_phi_mono(s, g, counts)] = ShuffleElem(words)
    return PhiPoly(space, terms)


def _hook_sum(prefix: tuple, counts: Sequence[int], taus: Sequence[int]) -> LyndonPoly:
    # sum of X_{prefix t} over all interleavings t; each such word is Lyndon
    terms = {}
    for t in _interleavings(counts, taus):
        terms[1 << (SLOT * LYNDON.slot(prefix + t))] = Q(1)
    return LyndonPoly(LYNDON, terms)


@lru_cache(maxsize=None)
def prefixed_sum(g: int, counts: tuple, s: int) -> LyndonPoly:
    """Lyndon form of sum_t f_{g t}, t over all orderings of the tau-multiset ``counts``.

    With x the smallest tau present (multiplicity a) and T the x-free rest,
        sum f_{g v} = sum_{i=0}^{a} (-1)^(a+i) X_x^i / i! * sum_t f_{x^(a-i) g t},
    an alternating-binomial identity of the shuffle product.  For a - i >= 1
    every word x^(a-i) g t is Lyndon, and the i = a term recurses on T.
    """
    taus = [tau(i) for i in range(1, s + 1)]
    nz = [i for i, a in enumerate(counts) if a]
    if not nz:
        return LyndonPoly.x((g,))
    j = nz[0]
    x, a = taus[j], counts[j]
    if g < x:
        return _hook_sum((g,), counts, taus)
    rest = list(counts)
    rest[j] = 0
    rest = tuple(rest)
    X = LyndonPoly.x((x,))
    if g == x and not any(rest):
        return (X ** (a + 1)).scale(Q(1, math.factorial(a + 1)))
    out = (X ** a).scale(Q(1, math.factorial(a))) * prefixed_sum(g, rest, s)
    for i in range(a):
        tail = _hook_sum((x,) * (a - i) + (g,), rest, taus)
        term = tail if i == 0 else (X ** i).scale(Q(1, math.factorial(i))) * tail
        out = out + term if (a + i) % 2 == 0 else out - term
    return out


@lru_cache(maxsize=None)
def _theta_lyndon(v: PLVariable, s: int) -> PhiPoly:
    space = phi_space(s)
    if v.n == 0:
        return PhiPoly(space, {1 << (SLOT * space.index[PhiVariable(tau(i), 0)]): LyndonPoly.x((tau(i),))
                               for i in range(1, s + 1)})
    terms = {}
    for g, counts in _image_shape(s, v.n):
        c = prefixed_sum(g, counts, s)
        if c:
            terms[_phi_mono(s, g, counts)] = c
    return PhiPoly(space, terms)


def theta_image(v: PLVariable, s: int, d: int | None = None, ring: str = "shuffle") -> PhiPoly:
    """theta#(v) as a PhiPoly; ``ring`` picks ShuffleElem or LyndonPoly coefficients."""
    _check(v, s, d)
    if ring == "shuffle":
        return _theta_shuffle(v, s)
    if ring == "lyndon":
        return _theta_lyndon(v, s)
    raise ValueError(f"unknown coefficient ring {ring!r}")


def theta_apply(f: Poly, s: int, d: int | None = None) -> PhiPoly:
    """Extend theta# multiplicatively; the coefficient ring follows f's coefficients."""
    space = phi_space(s)
    out = PhiPoly(space, {})
    ring = None
    images: dict[int, PhiPoly] = {}
    for m, c in f.terms.items():
        if ring is None:
            ring = "lyndon" if isinstance(c, LyndonPoly) else "shuffle"
        img = None
        for i, e in unpack(m):
            if i not in images:
                images[i] = theta_image(PL_SPACE.labels[i], s, d, ring)
            p = images[i] ** e
            img = p if img is None else img * p
        if img is None:
            out = out + PhiPoly(space, {0: c})
        else:
            out = out + img.scale(c)
    return out


def lyndon_variables_in_image(s: int, d: int) -> set:
    """Lyndon words occurring in the coefficients of theta#(log), theta#(Li_1..Li_d)."""
    found = set()
    for n in range(d + 1):
        for c in _theta_lyndon(PLVariable(n), s).terms.values():
            for m in c.terms:
                found.update(LYNDON.labels[i] for i, _ in unpack(m))
    return found


# -- monomial bases -------------------------------------------------------------

def weighted_monomials(degrees: Sequence[int], v: int) -> Iterator[tuple[int, ...]]:
    """Exponent vectors of weighted degree v, lexicographically descending."""
    n = len(degrees)
    exps = [0] * n

    def rec(i: int, left: int):
        if i == n - 1:
            if left % degrees[i] == 0:
                exps[i] = left // degrees[i]
                yield tuple(exps)
                exps[i] = 0
            return
        for e in range(left // degrees[i], -1, -1):
            exps[i] = e
            yield from rec(i + 1, left - e * degrees[i])
        exps[i] = 0

    if n == 0:
        if v == 0:
            yield ()
        return
    yield from rec(0, v)


def pl_monomials(d: int, v: int) -> list[int]:
    degs = PL_SPACE.degrees[: d + 1]
    return [pack(e) for e in weighted_monomials(degs, v)]


def phi_monomials(s: int, d: int, v: int) -> list[int]:
    degs = phi_space(s).degrees[: phi_var_count(s, d)]
    return [pack(e) for e in weighted_monomials(degs, v)]


# -- the matrix ---------------------------------------------------------------------

@dataclass
class SymbolicMatrix:
    s: int
    d: int
    v: int
    rows: list  # packed Phi-monomials
    cols: list  # packed PL-monomials
    entries: dict  # (row index, col index) -> ShuffleElem or LyndonPoly

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def row_labels(self) -> list[str]:
        return [phi_monomial_label(self.s, m) for m in self.rows]

    def col_labels(self) -> list[str]:
        return [pl_monomial_label(m) for m in self.cols]

    def dense(self) -> list[list]:
        R, C = self.shape
        out = [[0] * C for _ in range(R)]
        for (r, c), e in self.entries.items():
            out[r][c] = e
        return out


class ColumnBuilder:
    """theta# of PL-monomials, memoized through their divisors."""

    def __init__(self, s: int, d: int, images: dict[int, Poly]):
        self.s, self.d = s, d
        self.images = images
        self.memo: dict[int, Poly] = {}

    def column(self, m: int) -> Poly:
        hit = self.memo.get(m)
        if hit is not None:
            return hit
        if m == 0:
            raise ValueError("constant monomial has no theta column")
        # peel off the highest-index variable
        top = max(i for i, _ in unpack(m))
        parent = m - (1 << (SLOT * top))
        img = self.images[top]
        col = img if parent == 0 else self.column(parent) * img
        self.memo[m] = col
        return col


def build_matrix(s: int, d: int, v: int, ring: str = "shuffle") -> SymbolicMatrix:
    if d < 1 or v < 0:
        raise ValueError("need d >= 1 and v >= 0")
    rows = phi_monomials(s, d, v)
    cols = pl_monomials(d, v)
    row_index = {m: i for i, m in enumerate(rows)}
    images = {n: theta_image(PLVariable(n), s, d, ring) for n in range(d + 1)}
    builder = ColumnBuilder(s, d, images)
    entries = {}
    for j, m in enumerate(cols):
        if m == 0:
            continue
        for mono, c in builder.column(m).terms.items():
            entries[(row_index[mono], j)] = c
    if v == 0:
        entries[(0, 0)] = ShuffleElem.one() if ring == "shuffle" else LyndonPoly.constant_poly(1)
    return SymbolicMatrix(s, d, v, rows, cols, entries)


MATRIX_HEADER = "%%CKMatrix"


def export_matrix(M: SymbolicMatrix, path: str | Path) -> list[Path]:
    """Write the coordinate file plus ``.rows``/``.cols`` label sidecars."""
    path = Path(path)
    R, C = M.shape
    with path.open("w") as fh:
        fh.write(f"{MATRIX_HEADER} s={M.s} d={M.d} v={M.v} rows={R} cols={C}\n")
        for (r, c) in sorted(M.entries):
            fh.write(f"{r} {c} {_fmt_coeff(M.entries[(r, c)])}\n")
    rows_p = path.with_name(path.name + ".rows")
    cols_p = path.with_name(path.name + ".cols")
    rows_p.write_text("\n".join(M.row_labels()) + "\n")
    cols_p.write_text("\n".join(M.col_labels()) + "\n")
    return [path, rows_p, cols_p]


def read_matrix_header(path: str | Path) -> dict:
    with Path(path).open() as fh:
        head = fh.readline().split()
    if not head or head[0] != MATRIX_HEADER:
        raise ValueError("not a CKMatrix file")
    return {k: int(v) for k, v in (x.split("=") for x in head[1:])}


def to_lyndon_coeffs(p: Poly, d: int | None = None) -> Poly:
    """Convert every ShuffleElem coefficient of p to its Lyndon polynomial."""
    conv = default_converter()
    return p.map_coeffs(lambda c: conv.convert(c, d) if isinstance(c, ShuffleElem) else c)
