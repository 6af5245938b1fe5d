"""Ranks of the graded pieces of the domain and codomain of theta#."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

DEFAULT_V_MAX = 400


@dataclass(frozen=True)
class DimQuery:
    s: int
    d: int
    v: int

    def __post_init__(self):
        if self.s < 1 or self.d < 1 or self.v < 0:
            raise ValueError(f"invalid dimension query {self}")


def pl_weights(d: int) -> tuple[int, ...]:
    # log and Li_1 both have degree 1
    return (1,) + tuple(range(1, d + 1))


def phi_weights(s: int, d: int) -> tuple[int, ...]:
    return (1,) * (2 * s) + tuple(range(3, d + 1, 2))


@lru_cache(maxsize=256)
def partition_counts(weights: tuple[int, ...], v_max: int) -> tuple[int, ...]:
    """Coefficients of prod 1/(1 - q^w) up to q^v_max; equal weights count separately."""
    c = [0] * (v_max + 1)
    c[0] = 1
    for w in weights:
        for n in range(w, v_max + 1):
            c[n] += c[n - w]
    return tuple(c)


def count_partitions(v: int, weights: Sequence[int]) -> int:
    if v < 0:
        return 0
    return partition_counts(tuple(sorted(weights)), v)[v]


def dim_pl(q: DimQuery | int, v: int | None = None) -> int:
    """dim_PL(d, v); call as dim_pl(DimQuery(...)) or dim_pl(d, v)."""
    d, v = (q.d, q.v) if isinstance(q, DimQuery) else (q, v)
    return count_partitions(v, pl_weights(d))


def dim_phi(q: DimQuery | int, d: int | None = None, v: int | None = None) -> int:
    """dim_Phi(d, v); call as dim_phi(DimQuery(...)) or dim_phi(s, d, v)."""
    s, d, v = (q.s, q.d, q.v) if isinstance(q, DimQuery) else (q, d, v)
    return count_partitions(v, phi_weights(s, d))


@dataclass(frozen=True)
class Advantage:
    v: int
    dim_phi: int
    dim_pl: int


def first_advantage(s: int, d: int, v_max: int = DEFAULT_V_MAX) -> Advantage | None:
    """Smallest v <= v_max with dim_PL(d, v) > dim_Phi(d, v)."""
    pl = partition_counts(tuple(sorted(pl_weights(d))), v_max)
    ph = partition_counts(tuple(sorted(phi_weights(s, d))), v_max)
    for v in range(v_max + 1):
        if pl[v] > ph[v]:
            return Advantage(v, ph[v], pl[v])
    return None


def advantage_table(s: int, d_min: int, d_max: int, v_max: int = DEFAULT_V_MAX) -> list[tuple[int, Advantage | None]]:
    return [(d, first_advantage(s, d, v_max)) for d in range(d_min, d_max + 1)]
