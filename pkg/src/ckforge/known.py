"""Chabauty-Kim functions for one prime, used as ground truth."""

from __future__ import annotations

from ._rational import Q
from .alphabet import sigma, tau
from .shuffle import ShuffleElem, f
from .theta import LOG, PLPoly, Li, PLVariable, theta_apply, to_lyndon_coeffs


def _pl(v: PLVariable, c=None) -> PLPoly:
    return PLPoly.var(v, ShuffleElem.one() if c is None else c)


def f122() -> PLPoly:
    """Li2 - log Li1 / 2."""
    return _pl(Li(2)) - (_pl(LOG) * _pl(Li(1))).scale(Q(1, 2))


def f144() -> PLPoly:
    s3, t = sigma(3), tau(1)
    a = f(s3) * f(t)
    b = f(s3, t)
    log = _pl(LOG)
    return (_pl(Li(4)) * a - (log * _pl(Li(3))) * b
            - (log * log * log * _pl(Li(1))) * ((a - b * 4) * Q(1, 24)))


KNOWN = {
    "F122": (f122, 1, 2),
    "F144": (f144, 1, 4),
}


def theta_vanishes(F: PLPoly, s: int, d: int, ring: str = "shuffle") -> bool:
    if ring == "lyndon":
        F = to_lyndon_coeffs(F, d)
    return not theta_apply(F, s, d)


def verify_known() -> dict[str, bool]:
    """theta#(F) = 0 for the one-prime functions, in both coefficient rings."""
    out = {}
    for name, (fn, s, d) in KNOWN.items():
        F = fn()
        out[f"theta#({name}) = 0, shuffle coefficients"] = theta_vanishes(F, s, d)
        out[f"theta#({name}) = 0, Lyndon coefficients"] = theta_vanishes(F, s, d, "lyndon")
    # a two-prime sanity check: F122 is no longer in the kernel
    out["theta#(F122) != 0 for two primes"] = not theta_vanishes(f122(), 2, 2)
    return out


# the displayed (1,2,2) matrix, keyed by labels since our row order differs;
# entries as multiples of f_t^2 = 2 f_{t t}
DISPLAYED_M122 = {
    ("P[t1|e0]^2", "log^2"): Q(1),
    ("P[t1|e1]^2", "Li1^2"): Q(1),
    ("P[t1|e0]*P[t1|e1]", "log*Li1"): Q(1),
    ("P[t1|e0]*P[t1|e1]", "Li2"): Q(1, 2),
}


def check_matrix_122() -> tuple[bool, bool]:
    """(entrywise match with the displayed matrix, kernel is spanned by F122)."""
    from .linalg import SparseRatMatrix, kernel_basis
    from .theta import build_matrix

    M = build_matrix(1, 2, 2)
    rows, cols = M.row_labels(), M.col_labels()
    ftau_sq = f(tau(1)) * f(tau(1))
    match = True
    for r, rl in enumerate(rows):
        for c, cl in enumerate(cols):
            want = ftau_sq * DISPLAYED_M122.get((rl, cl), Q(0))
            got = M.entries.get((r, c), ShuffleElem.zero())
            match &= (got == want)
    # every entry is a rational multiple of f_{t t}, so the kernel is that of the ratios
    ratios = {rc: Q(e.terms[(tau(1), tau(1))]) for rc, e in M.entries.items()
              if set(e.terms) == {(tau(1), tau(1))}}
    if len(ratios) != len(M.entries):
        return match, False
    basis = kernel_basis(SparseRatMatrix(len(rows), len(cols), ratios))
    F = f122()
    want = [Q(0)] * len(cols)
    for m, c in F.terms.items():
        want[M.cols.index(m)] = Q(c.terms[()])
    spans = len(basis) == 1 and _proportional(basis[0], want)
    return match, spans


def _proportional(u, v) -> bool:
    k = next((i for i, a in enumerate(v) if a), None)
    if k is None or not u[k]:
        return False
    r = u[k] / v[k]
    return all(a == r * b for a, b in zip(u, v))
