"""Two-prime elimination: nu4, nu6, their Sylvester resultant and F^{|2|}_{6,18}.

Conventions: tau_p = t1, tau_q = t2, X stands for Phi^{tau_p}_{e0}.  The nu
polynomials are transcribed from their closed forms over an arbitrary
coefficient ring, given as a map word -> f_word.  With the symbolic map the
coefficients are Lyndon polynomials; with a numeric map they are rationals at a
Lyndon point x.  Everything downstream only adds and multiplies, so
specialization commutes with every construction here.

The fully expanded symbolic resultant does not fit in memory (its coefficients
have word-degree around 76), so F618 is certified symbolically through its
cofactor form and computed exactly at Lyndon points.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from ._rational import Q, format_rational
from .alphabet import format_word, lyndon_words, sigma, tau
from .lyndon import LyndonPoly, default_converter, evaluate
from .poly import SLOT, unpack
from .shuffle import f as fword
from .theta import LOG, PL_SPACE, PLPoly, PLVariable, PhiPoly, PhiVariable, Li, _theta_lyndon, phi_space, theta_apply

TAU_P, TAU_Q = tau(1), tau(2)
S3, S5 = sigma(3), sigma(5)
HALF = Q(1, 2)
DEPTH = 6


class FactorizationError(ArithmeticError):
    pass


# -- coefficient rings ------------------------------------------------------------

class Coefficients:
    """f_w values: Lyndon polynomials, or their values at a point x."""

    def __init__(self, x: Mapping | None = None):
        self.x = x
        self._memo: dict = {}
        self.one = LyndonPoly.constant_poly(1) if x is None else Q(1)

    @property
    def symbolic(self) -> bool:
        return self.x is None

    def __call__(self, *w: int):
        hit = self._memo.get(w)
        if hit is None:
            hit = default_converter().convert(fword(*w), DEPTH)
            if self.x is not None:
                hit = evaluate(hit, self.x)
            self._memo[w] = hit
        return hit

    def bracket(self):
        """f_{[tau_q, tau_p]} = f_{tau_q tau_p} - f_{tau_p tau_q}."""
        return self(TAU_Q, TAU_P) - self(TAU_P, TAU_Q)

    def pl(self, v: PLVariable) -> PLPoly:
        return PLPoly.var(v, self.one)

    def pl_const(self, c) -> PLPoly:
        return PLPoly.const(c)

    def f122(self) -> PLPoly:
        return self.pl(Li(2)) - (self.pl(LOG) * self.pl(Li(1))).scale(HALF)


def specialize_pl(p: PLPoly, x: Mapping) -> PLPoly:
    return p.map_coeffs(lambda c: evaluate(c, x) if isinstance(c, LyndonPoly) else c)


# -- polynomials in X -------------------------------------------------------------

class NuPoly:
    """Univariate polynomial in X with PLPoly coefficients, {power: PLPoly}."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, PLPoly] | None = None):
        self.coeffs = {k: c for k, c in (coeffs or {}).items() if c}

    @classmethod
    def x_power(cls, k: int, c: PLPoly) -> "NuPoly":
        return cls({k: c})

    @property
    def degree(self) -> int:
        return max(self.coeffs, default=-1)

    def coeff(self, k: int) -> PLPoly:
        return self.coeffs.get(k, PLPoly.const(0))

    def indexed(self, base: int) -> dict[int, PLPoly]:
        """{base: leading coeff, base+1: next, ...}, the a_i / b_j naming."""
        n = self.degree
        return {base + (n - k): self.coeff(k) for k in range(n, -1, -1)}

    def __add__(self, other: "NuPoly") -> "NuPoly":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return NuPoly(out)

    def __neg__(self) -> "NuPoly":
        return NuPoly({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other: "NuPoly") -> "NuPoly":
        return self + (-other)

    def __mul__(self, other) -> "NuPoly":
        if not isinstance(other, NuPoly):
            # scalar from the coefficient ring, or a PLPoly; PL factor stays on the left
            return NuPoly({k: c * other for k, c in self.coeffs.items()})
        out: dict[int, PLPoly] = {}
        for i, u in self.coeffs.items():
            for j, v in other.coeffs.items():
                w = u * v
                out[i + j] = out[i + j] + w if i + j in out else w
        return NuPoly(out)

    def map_coeffs(self, fn: Callable[[PLPoly], PLPoly]) -> "NuPoly":
        return NuPoly({k: fn(c) for k, c in self.coeffs.items()})

    def specialize(self, x: Mapping) -> "NuPoly":
        return self.map_coeffs(lambda c: specialize_pl(c, x))

    def __eq__(self, other) -> bool:
        return isinstance(other, NuPoly) and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"NuPoly(degree={self.degree}, terms={ {k: len(c) for k, c in self.coeffs.items()} })"


def _linear(F: Coefficients) -> NuPoly:
    """log - f_{tau_p} X."""
    return NuPoly({0: F.pl(LOG), 1: F.pl_const(-F(TAU_P))})


def _powers(F: Coefficients, n: int) -> list[NuPoly]:
    lin = _linear(F)
    out = [NuPoly({0: F.pl_const(F.one)})]
    for _ in range(n):
        out.append(out[-1] * lin)
    return out


def _elim_terms(F: Coefficients) -> tuple[NuPoly, NuPoly]:
    """Images of Delta Phi_e1^{tau_p} and f_q Delta Phi_e1^{tau_q} with theta# dropped."""
    fp, fq = F(TAU_P), F(TAU_Q)
    log, li1, li2 = F.pl(LOG), F.pl(Li(1)), F.pl(Li(2))
    l1 = NuPoly({1: li1 * (F.bracket() * HALF), 0: F.f122() * (-fq)})
    l2 = NuPoly({1: li1 * (F(TAU_P, TAU_P, TAU_Q) - F(TAU_Q, TAU_P, TAU_P)),
                 0: li2 * (fp * fq) - (log * li1) * F(TAU_P, TAU_Q)})
    return l1, l2


def _split(taus: Sequence[int]) -> int:
    # |I| for the subset convention: positions holding tau_p
    return sum(1 for t in taus if t == TAU_P)


def build_nu4(F: Coefficients | None = None) -> NuPoly:
    F = F or Coefficients()
    fp, fq, fs3, br = F(TAU_P), F(TAU_Q), F(S3), F.bracket()
    log, li3, li4 = F.pl(LOG), F.pl(Li(3)), F.pl(Li(4))
    nu = NuPoly({
        0: (log * li4) * (fq ** 4 * fs3 * br * (-HALF)) + (log * log * li3) * (fq ** 3 * F(S3, TAU_Q) * br * HALF),
        1: (log * li3) * (fq ** 3 * br * HALF * (F(S3, TAU_P) * fq - F(S3, TAU_Q) * fp)),
    })
    l1, l2 = _elim_terms(F)
    pw = _powers(F, 3)
    for t2, t3, t4 in itertools.product((TAU_P, TAU_Q), repeat=3):
        i = _split((t2, t3, t4))
        A = F(TAU_P, t2, t3, t4) * fs3 - F(TAU_P, t3, t4) * F(S3, t2)
        B = F(TAU_Q, t2, t3, t4) * fs3 - F(TAU_Q, t3, t4) * F(S3, t2)
        # the display's f_q^{i+1} * (1/f_q) leaves f_q^i on the second block
        block = l1 * (fq ** (i + 1) * A) + l2 * (fq ** i * B)
        nu = nu + block * NuPoly({i: F.pl_const(F.one)}) * pw[3 - i]
    return nu


def build_nu6(F: Coefficients | None = None) -> NuPoly:
    F = F or Coefficients()
    fp, fq, fs3, fs5, br = F(TAU_P), F(TAU_Q), F(S3), F(S5), F.bracket()
    log, li3, li5, li6 = F.pl(LOG), F.pl(Li(3)), F.pl(Li(5)), F.pl(Li(6))
    nu = NuPoly({
        0: (log * li6) * (fq ** 6 * fs3 * fs5 * br * (-HALF))
           + (log * log * li5) * (fq ** 5 * fs3 * F(S5, TAU_Q) * br * HALF),
        1: (log * li5) * (fq ** 5 * fs3 * br * HALF * (F(S5, TAU_P) * fq - F(S5, TAU_Q) * fp)),
    })
    pw = _powers(F, 5)
    for t4, t5, t6 in itertools.product((TAU_P, TAU_Q), repeat=3):
        j = _split((t4, t5, t6))
        c = fq ** (3 + j) * br * HALF * (F(S3, t4, t5, t6) * fs5 - F(S3, t4, t5) * F(S5, t6))
        nu = nu + NuPoly({j: (log * li3) * c}) * pw[3 - j]
    l1, l2 = _elim_terms(F)
    for ts in itertools.product((TAU_P, TAU_Q), repeat=5):
        t2, t3, t4, t5, t6 = ts
        i = _split(ts)

        def block(g):
            return (F(g, t2, t3) * F(S3, t4, t5) * F(S5, t6)
                    - F(g, t2, t3, t4, t5) * fs3 * F(S5, t6)
                    - F(g, t2, t3) * F(S3, t4, t5, t6) * fs5
                    + F(g, t2, t3, t4, t5, t6) * fs3 * fs5)

        part = l1 * (fq ** (i + 1) * block(TAU_P)) + l2 * (fq ** i * block(TAU_Q))
        nu = nu + part * NuPoly({i: F.pl_const(F.one)}) * pw[5 - i]
    return nu


# -- resultant ------------------------------------------------------------------

def sylvester_matrix(f: NuPoly, g: NuPoly) -> list[list]:
    """Coefficients run down the columns, f-columns first; None marks a zero."""
    m, n = f.degree, g.degree
    size = m + n
    M = [[None] * size for _ in range(size)]
    for j in range(n):
        for k in range(m + 1):
            M[j + k][j] = f.coeff(m - k) or None
    for j in range(m):
        for k in range(n + 1):
            M[j + k][n + j] = g.coeff(n - k) or None
    return M


_UNIT = object()


def determinant(M: list[list]):
    """Laplace expansion along columns with memoized minors; None entries are zero."""
    size = len(M)
    memo: dict = {}
    one = _UNIT

    def minor(rows: tuple, k: int):
        if k == size:
            return one
        key = rows
        if key in memo:
            return memo[key]
        out = None
        for idx, r in enumerate(rows):
            e = M[r][k]
            if e is None:
                continue
            sub = minor(rows[:idx] + rows[idx + 1:], k + 1)
            if sub is None:
                continue
            t = e if sub is one else e * sub
            if idx % 2:
                t = -t
            out = t if out is None else out + t
        memo[key] = out
        return out

    det = minor(tuple(range(size)), 0)
    return None if det is _UNIT else det


def sylvester_resultant(f: NuPoly, g: NuPoly) -> PLPoly:
    if f.degree < 1 or g.degree < 1:
        raise ValueError("not of stated degree: need positive X-degrees")
    M = sylvester_matrix(f, g)
    det = determinant(M)
    return det if det is not None else PLPoly.const(0)


# -- exact division ---------------------------------------------------------------

LOG_SHIFT = SLOT * PL_SPACE.slot(LOG)
LI2_SHIFT = SLOT * PL_SPACE.slot(Li(2))


def divide_log_power(p: PLPoly, k: int) -> PLPoly:
    out = {}
    step = k << LOG_SHIFT
    for m, c in p.terms.items():
        if ((m >> LOG_SHIFT) & 0xFF) < k:
            raise FactorizationError(f"factorization claim violated: log^{k} does not divide")
        out[m - step] = c
    return PLPoly(PL_SPACE, out)


def divide_by_f122(p: PLPoly, F: Coefficients | None = None) -> PLPoly:
    """Exact division by Li2 - log Li1 / 2, with Li2 as main variable (synthetic division)."""
    F = F or Coefficients()
    by_e: dict[int, dict] = {}
    for m, c in p.terms.items():
        e = (m >> LI2_SHIFT) & 0xFF
        by_e.setdefault(e, {})[m - (e << LI2_SHIFT)] = c
    if not by_e:
        return PLPoly.const(0)
    h = (F.pl(LOG) * F.pl(Li(1))).scale(HALF)
    top = max(by_e)
    q: dict[int, PLPoly] = {}
    carry = PLPoly(PL_SPACE, {})
    for e in range(top, 0, -1):
        carry = PLPoly(PL_SPACE, by_e.get(e, {})) + carry
        q[e - 1] = carry
        carry = h * carry
    rem = PLPoly(PL_SPACE, by_e.get(0, {})) + carry
    if rem:
        raise FactorizationError("factorization claim violated: F122 leaves a remainder")
    out = PLPoly.const(0)
    for e, c in q.items():
        out = out + PLPoly(PL_SPACE, {m + (e << LI2_SHIFT): v for m, v in c.terms.items()})
    return out


def pl_degrees(p: PLPoly) -> set[int]:
    return p.degrees()


def li_squared_part(p: PLPoly, n: int) -> PLPoly:
    """Terms of p with Li_n exponent exactly 2."""
    sh = SLOT * PL_SPACE.slot(Li(n))
    return PLPoly(PL_SPACE, {m: c for m, c in p.terms.items() if (m >> sh) & 0xFF == 2})


# -- symbolic certificate ----------------------------------------------------------

@dataclass
class Certificate:
    """Symbolic data pinning down F618 = alpha * C11 + beta * C15 (primed cofactors)."""

    nu4: NuPoly
    nu6: NuPoly
    nu4p: NuPoly      # nu4 / log
    nu6p: NuPoly
    alpha: object     # a3' / F122, an element of O(U_S)
    beta: object


def _strip_log(nu: NuPoly) -> NuPoly:
    return nu.map_coeffs(lambda c: divide_log_power(c, 1))


def _scalar_quotient(p: PLPoly, F: Coefficients):
    q = divide_by_f122(p, F)
    if set(q.terms) - {0}:
        raise FactorizationError("factorization claim violated: quotient is not a scalar")
    return q.terms.get(0, 0 * F.one)


def certificate(F: Coefficients | None = None) -> Certificate:
    F = F or Coefficients()
    nu4, nu6 = build_nu4(F), build_nu6(F)
    n4, n6 = _strip_log(nu4), _strip_log(nu6)
    alpha = _scalar_quotient(n4.coeff(n4.degree), F)
    beta = _scalar_quotient(n6.coeff(n6.degree), F)
    return Certificate(nu4, nu6, n4, n6, alpha, beta)


def f618_from_cofactors(cert: Certificate) -> PLPoly:
    """alpha * C11 + beta * C15 of the primed Sylvester matrix (first row is a3', 0, 0, 0, b3', 0)."""
    M = sylvester_matrix(cert.nu4p, cert.nu6p)
    size = len(M)
    total = PLPoly.const(0)
    for col, scal in ((0, cert.alpha), (cert.nu6p.degree, cert.beta)):
        sub = [[M[r][c] for c in range(size) if c != col] for r in range(1, size)]
        det = determinant(sub)
        if det is not None:
            sign = -1 if col % 2 else 1
            total = total + det * (scal * sign)
    return total


def li6_square_closed_form(F: Coefficients, cert: Certificate) -> PLPoly:
    """[Li6^2] F618 = 1/4 f_q^12 (f_s3 f_s5 f_[q,p])^2 alpha^4 F122^3, from the diagonal a3^4 b7^2."""
    fq, c = F(TAU_Q), F(S3) * F(S5) * F.bracket()
    li6 = F.pl(Li(6))
    return (li6 * li6) * F.f122() ** 3 * (fq ** 12 * c * c * cert.alpha ** 4 * Q(1, 4))


# -- specialized F618 ----------------------------------------------------------------

def lyndon_point_rational(s: int, d: int, seed: int) -> dict:
    rng = random.Random(f"rational:{seed}")
    return {w: Q(rng.randint(1, 1 << 16) * rng.choice((1, -1)), rng.randint(1, 1 << 8))
            for w in lyndon_words(s, d, d)}


def extract_f618(x: Mapping) -> tuple[PLPoly, dict]:
    """F618 at the Lyndon point x via Res(nu4, nu6) / (log^6 F122), plus the degree ledger."""
    F = Coefficients(x)
    nu4, nu6 = build_nu4(F), build_nu6(F)
    res = sylvester_resultant(nu4, nu6)
    primed = divide_log_power(res, 6)
    out = divide_by_f122(primed, F)
    ledger = {
        "deg_nu4": nu4.degree, "deg_nu6": nu6.degree,
        "a": {i: sorted(pl_degrees(c)) for i, c in nu4.indexed(3).items()},
        "b": {j: sorted(pl_degrees(c)) for j, c in nu6.indexed(3).items()},
        "res_degrees": sorted(pl_degrees(res)), "primed_degrees": sorted(pl_degrees(primed)),
        "f618_degrees": sorted(pl_degrees(out)), "f618_max_li": out.max_li(), "f618_terms": len(out),
        "res_li6_sq": li_squared_part(res, 6), "nu4": nu4, "nu6": nu6, "res": res,
    }
    return out, ledger


# -- numeric theta# -------------------------------------------------------------------

def random_phi(s: int, d: int, rng: random.Random) -> dict:
    space = phi_space(s)
    vals = {}
    for lab in space.labels:
        if lab.degree <= d:
            vals[lab] = Q(rng.randint(1, 1 << 12) * rng.choice((1, -1)), rng.randint(1, 1 << 6))
    return vals


def _eval_mono(space, m: int, vals: Mapping):
    out = Q(1)
    for i, e in unpack(m):
        out *= vals[space.labels[i]] ** e
    return out


def theta_values(s: int, d: int, x: Mapping, phi: Mapping) -> list:
    """theta#(log), theta#(Li_1..Li_d) evaluated at Lyndon point x and Phi values."""
    space = phi_space(s)
    out = []
    for n in range(d + 1):
        img = _theta_lyndon(PLVariable(n), s)
        out.append(sum((evaluate(c, x) * _eval_mono(space, m, phi) for m, c in img.terms.items()), Q(0)))
    return out


def eval_pl(p: PLPoly, thetas: Sequence) -> object:
    """Evaluate a PLPoly with rational coefficients at PL-variable values."""
    total = Q(0)
    for m, c in p.terms.items():
        v = Q(c)
        for i, e in unpack(m):
            v *= thetas[PL_SPACE.labels[i].n] ** e
        total += v
    return total


def eval_nu(nu: NuPoly, thetas: Sequence, X) -> object:
    return sum((eval_pl(c, thetas) * X ** k for k, c in nu.coeffs.items()), Q(0))


# -- reports ------------------------------------------------------------------------

@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(ok), detail))
        return bool(ok)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def lines(self) -> list[str]:
        return [f"{'PASS' if c.ok else 'FAIL'}  {c.name}" + (f"  ({c.detail})" if c.detail else "")
                for c in self.checks]


# -- elimination identities -------------------------------------------------------------

def _phi(s: int, lab, one) -> PhiPoly:
    return PhiPoly(phi_space(s), {1 << (SLOT * phi_space(s).slot(lab)): one})


def elimination_identities() -> dict[str, tuple[PhiPoly, PhiPoly]]:
    """Named (lhs, rhs) pairs in Phi-variables with Lyndon coefficients."""
    F = Coefficients()
    s = 2
    one = F.one
    p0, p1 = _phi(s, PhiVariable(TAU_P, 0), one), _phi(s, PhiVariable(TAU_P, 1), one)
    q0, q1 = _phi(s, PhiVariable(TAU_Q, 0), one), _phi(s, PhiVariable(TAU_Q, 1), one)
    e0 = {TAU_P: p0, TAU_Q: q0}
    e1 = {TAU_P: p1, TAU_Q: q1}
    sig3, sig5 = _phi(s, PhiVariable(S3, 1), one), _phi(s, PhiVariable(S5, 1), one)

    def th(p: PLPoly) -> PhiPoly:
        return theta_apply(p, s)

    fp, fq = F(TAU_P), F(TAU_Q)
    log, li1, li2 = F.pl(LOG), F.pl(Li(1)), F.pl(Li(2))
    delta = (p0 * F(TAU_Q, TAU_P) + q0 * F(TAU_Q, TAU_Q)) * fp - (p0 * F(TAU_P, TAU_P) + q0 * F(TAU_P, TAU_Q)) * fq
    ids = {
        "Delta = 1/2 f_[q,p] theta(log)": (delta, th(log) * (F.bracket() * HALF)),
        "Delta Phi_e1^p = 1/2 f_[q,p] theta(Li1) X - f_q theta(F122)":
            (delta * p1, th(li1) * p0 * (F.bracket() * HALF) - th(F.f122()) * fq),
        "f_q Delta Phi_e1^q = (f_ppq - f_qpp) theta(Li1) X + f_p f_q theta(Li2) - f_pq theta(log Li1)":
            (delta * q1 * fq, th(li1) * p0 * (F(TAU_P, TAU_P, TAU_Q) - F(TAU_Q, TAU_P, TAU_P))
             + th(li2) * (fp * fq) - th(log * li1) * F(TAU_P, TAU_Q)),
    }
    taus = (TAU_P, TAU_Q)
    rhs3 = th(F.pl(Li(3)))
    for a, b, c in itertools.product(taus, repeat=3):
        rhs3 = rhs3 - e1[a] * e0[b] * e0[c] * F(a, b, c)
    ids["f_s3 Phi^s3 = theta(Li3) - sum f_abc Phi_e1 Phi_e0 Phi_e0"] = (sig3 * F(S3), rhs3)
    rhs5 = th(F.pl(Li(5)))
    for a, b in itertools.product(taus, repeat=2):
        rhs5 = rhs5 - sig3 * e0[a] * e0[b] * F(S3, a, b)
    for w in itertools.product(taus, repeat=5):
        rhs5 = rhs5 - e1[w[0]] * e0[w[1]] * e0[w[2]] * e0[w[3]] * e0[w[4]] * F(*w)
    ids["f_s5 Phi^s5 = theta(Li5) - sigma3 and tau terms"] = (sig5 * F(S5), rhs5)
    return ids


def _perturb(nu: NuPoly) -> NuPoly:
    # flip the sign of one coefficient (the X^1 one), a mutation control
    k = 1 if 1 in nu.coeffs else nu.degree
    out = dict(nu.coeffs)
    out[k] = -out[k]
    return NuPoly(out)


def verify_elimination_identities(trials: int = 20, seed: int = 0) -> Report:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rep = Report("elimination identities")
    for name, (lhs, rhs) in elimination_identities().items():
        rep.add(f"symbolic: {name}", lhs == rhs)
    F = Coefficients()
    nu4, nu6 = build_nu4(F), build_nu6(F)
    bad4 = _perturb(nu4)
    fails = {"P4": [], "P6": [], "commute": []}
    mutant_hits = 0
    rng = random.Random(f"elim:{seed}")
    for t in range(trials):
        x = lyndon_point_rational(2, DEPTH, seed * 7919 + t)
        phi = random_phi(2, DEPTH, rng)
        th = theta_values(2, DEPTH, x, phi)
        X = phi[PhiVariable(TAU_P, 0)]
        n4, n6 = nu4.specialize(x), nu6.specialize(x)
        if eval_nu(n4, th, X) != 0:
            fails["P4"].append(t)
        if eval_nu(n6, th, X) != 0:
            fails["P6"].append(t)
        if eval_nu(bad4.specialize(x), th, X) != 0:
            mutant_hits += 1
        # theta#(Res(nu4, nu6)) against Res(P4, P6), both numeric
        res_then_theta = eval_pl(sylvester_resultant(n4, n6), th)
        p4 = NuPoly({k: PLPoly.const(eval_pl(c, th)) for k, c in n4.coeffs.items()})
        p6 = NuPoly({k: PLPoly.const(eval_pl(c, th)) for k, c in n6.coeffs.items()})
        r = sylvester_resultant(p4, p6)
        theta_then_res = r.terms.get(0, Q(0))
        if res_then_theta != theta_then_res or theta_then_res != 0:
            fails["commute"].append(t)
    rep.add(f"P4(X) = 0 at {trials} random rational points", not fails["P4"], f"failing trials {fails['P4']}" if fails["P4"] else "")
    rep.add(f"P6(X) = 0 at {trials} random rational points", not fails["P6"], f"failing trials {fails['P6']}" if fails["P6"] else "")
    rep.add("theta#(Res(nu4,nu6)) = Res(P4,P6) = 0", not fails["commute"])
    rep.add("mutation control: perturbed nu4 detected", mutant_hits > 0, f"{mutant_hits}/{trials} nonzero")
    return rep


# -- F618 checks ------------------------------------------------------------------------

def structure_report(cert: Certificate | None = None) -> Report:
    """Symbolic degree and divisibility ledger for nu4, nu6, and the cofactor form of F618."""
    F = Coefficients()
    rep = Report("nu4 / nu6 structure")
    try:
        cert = cert or certificate(F)
    except FactorizationError as exc:
        rep.add("log divides every coefficient; F122 divides a3', b3'", False, str(exc))
        return rep
    a, b = cert.nu4.indexed(3), cert.nu6.indexed(3)
    rep.add("deg_X nu4 = 2", cert.nu4.degree == 2, f"got {cert.nu4.degree}")
    rep.add("deg_X nu6 = 4", cert.nu6.degree == 4, f"got {cert.nu6.degree}")
    rep.add("a_i homogeneous of PL-degree i", all(pl_degrees(c) == {i} for i, c in a.items()))
    rep.add("b_j homogeneous of PL-degree j", all(pl_degrees(c) == {j} for j, c in b.items()))
    log = F.pl(LOG)
    rep.add("every a_i, b_j divisible by log",
            all(log * p == c for nu, nup in ((cert.nu4, cert.nu4p), (cert.nu6, cert.nu6p))
                for p, c in zip(nup.indexed(3).values(), nu.indexed(3).values())))
    rep.add("a3' and b3' divisible by F122",
            cert.nu4p.coeff(2) == F.f122() * cert.alpha and cert.nu6p.coeff(4) == F.f122() * cert.beta,
            "quotients alpha, beta lie in O(U_S)")
    rep.add("alpha != 0", bool(cert.alpha), f"{len(cert.alpha)} Lyndon terms")
    rep.add("only b7 involves Li6", all(c.degree_in(Li(6)) == 0 for j, c in b.items() if j != 7)
            and b[7].degree_in(Li(6)) == 1)
    rep.add("a3, a4 free of Li4", a[3].degree_in(Li(4)) == 0 and a[4].degree_in(Li(4)) == 0)
    lead = (F.pl(LOG) * F.pl(Li(6))) * (F(TAU_Q) ** 6 * F(S3) * F(S5) * F.bracket() * (-HALF))
    li6_part = PLPoly(PL_SPACE, {m: c for m, c in b[7].terms.items() if (m >> (SLOT * 6)) & 0xFF})
    rep.add("Li6 term of b7 = -1/2 f_q^6 f_s3 f_s5 f_[q,p] log Li6", li6_part == lead)
    lead4 = (F.pl(LOG) * F.pl(Li(4))) * (F(TAU_Q) ** 4 * F(S3) * F.bracket() * (-HALF))
    li4_part = PLPoly(PL_SPACE, {m: c for m, c in a[5].terms.items() if (m >> (SLOT * 4)) & 0xFF})
    rep.add("Li4 term of a5 = -1/2 f_q^4 f_s3 f_[q,p] log Li4", li4_part == lead4)
    return rep


def matrix_kernel_check(F618: PLPoly, x: Mapping, n_primes: int = 3, seed: int = 0) -> tuple[bool, dict]:
    """M(theta#_{6,18})(x) c(x) = 0 exactly, and the specialized kernel is one-dimensional."""
    from .linalg import random_primes, rank_mod_p_dense
    from .upper_bound import specialize_theta

    M = specialize_theta(2, DEPTH, 18, x)
    col = {m: j for j, m in enumerate(M.cols)}
    stray = [m for m in F618.terms if m not in col]
    vec = [Q(0)] * len(M.cols)
    for m, c in F618.terms.items():
        if m in col:
            vec[col[m]] = Q(c)
    residual = M.apply(vec)
    zero = not stray and all(v == 0 for v in residual)
    primes = random_primes(n_primes, seed)
    ranks = [rank_mod_p_dense(M.mod_p(p), p) for p in primes]
    kdim = len(M.cols) - max(ranks)
    return zero and kdim == 1, {"exact_zero": zero, "stray_monomials": len(stray), "ranks": ranks,
                                "kernel_dim": kdim, "shape": M.shape}


def verify_f618(trials: int = 20, seed: int = 0, matrix_points: int = 3, symbolic: bool = True) -> Report:
    """Full ledger: structure, factorization at points, theta#-vanishing, matrix kernel."""
    from .upper_bound import lyndon_point

    rep = Report("F618")
    cert = None
    F = Coefficients()
    if symbolic:
        cert = certificate(F)
        for c in structure_report(cert).checks:
            rep.checks.append(c)
    rng = random.Random(f"f618:{seed}")
    theta_fail, mutant_hits = [], 0
    for t in range(trials):
        x = lyndon_point_rational(2, DEPTH, seed * 104729 + t)
        try:
            F618, led = extract_f618(x)
        except FactorizationError as exc:
            rep.add(f"factorization at rational point {t}", False, str(exc))
            return rep
        if t == 0:
            rep.add("Res homogeneous of PL-degree 26", led["res_degrees"] == [26], str(led["res_degrees"]))
            rep.add("Res / log^6 has PL-degree 20", led["primed_degrees"] == [20])
            Fx = Coefficients(x)
            log6 = Fx.pl(LOG) ** 6
            rep.add("Res = log^6 F122 F618 with zero remainders", led["res"] == log6 * Fx.f122() * F618)
            rep.add("F618 != 0, homogeneous of PL-degree 18", bool(F618) and led["f618_degrees"] == [18],
                    f"{led['f618_terms']} monomials")
            rep.add("F618 involves Li-variables up to Li6", led["f618_max_li"] == 6)
            sq = li_squared_part(F618, 6)
            rep.add("F618 has nonzero (Li6)^2 component", bool(sq))
            nu4 = led["nu4"]
            a3 = nu4.coeff(2)
            lead = (Fx.pl(LOG) * Fx.pl(LOG) * Fx.pl(Li(6)) * Fx.pl(Li(6))) * (
                Fx(TAU_Q) ** 12 * (Fx(S3) * Fx(S5) * Fx.bracket()) ** 2 * Q(1, 4))
            rep.add("[Li6^2] Res = 1/4 a3^4 f_q^12 (f_s3 f_s5 f_[q,p])^2 log^2 Li6^2",
                    led["res_li6_sq"] == lead * a3 ** 4)
            if cert is not None:
                rep.add("F618 = alpha C11 + beta C15 (symbolic certificate) at x",
                        F618 == f618_from_cofactors(Certificate(
                            cert.nu4.specialize(x), cert.nu6.specialize(x),
                            cert.nu4p.specialize(x), cert.nu6p.specialize(x),
                            evaluate(cert.alpha, x), evaluate(cert.beta, x))))
                rep.add("[Li6^2] F618 = 1/4 f_q^12 (f_s3 f_s5 f_[q,p])^2 alpha^4 F122^3 at x",
                        sq == specialize_pl(li6_square_closed_form(F, cert), x))
        phi = random_phi(2, DEPTH, rng)
        th = theta_values(2, DEPTH, x, phi)
        if eval_pl(F618, th) != 0:
            theta_fail.append(t)
        # mutation: flip one coefficient
        m0 = min(F618.terms)
        bad = PLPoly(PL_SPACE, dict(F618.terms))
        bad.terms[m0] = -bad.terms[m0]
        if eval_pl(bad, th) != 0:
            mutant_hits += 1
    rep.add(f"theta#(F618) = 0 at {trials} random rational points", not theta_fail,
            f"failing trials {theta_fail}" if theta_fail else "")
    rep.add("mutation control: perturbed F618 detected", mutant_hits > 0, f"{mutant_hits}/{trials}")
    for k in range(matrix_points):
        x = lyndon_point(2, DEPTH, seed + k)
        F618, _ = extract_f618(x)
        ok, info = matrix_kernel_check(F618, x, seed=seed + k)
        rep.add(f"F618(x) spans ker M(theta#_6,18)(x), integer point {k}", ok,
                f"kernel dim {info['kernel_dim']}, exact zero {info['exact_zero']}")
    return rep


def format_f618(F618: PLPoly) -> str:
    return F618.text()


def certificate_text(cert: Certificate) -> str:
    """Human-readable dump of the symbolic pieces (Lyndon coefficients)."""
    out = []
    for letter, nu in (("a", cert.nu4p), ("b", cert.nu6p)):
        for i, c in nu.indexed(3).items():
            out.append(f"# {letter}{i}' (coefficient divided by log)")
            out.append(c.text())
    out.append("# alpha = a3' / F122")
    out.append(str(cert.alpha))
    out.append("# beta = b3' / F122")
    out.append(str(cert.beta))
    return "\n".join(out)


__all__ = [
    "Coefficients", "NuPoly", "build_nu4", "build_nu6", "sylvester_matrix", "determinant",
    "sylvester_resultant", "divide_log_power", "divide_by_f122", "certificate", "f618_from_cofactors",
    "extract_f618", "verify_elimination_identities", "verify_f618", "structure_report",
    "matrix_kernel_check", "FactorizationError", "Report", "format_rational", "format_word",
]
