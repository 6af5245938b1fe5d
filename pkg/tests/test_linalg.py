import random
from fractions import Fraction

import numpy as np
import pytest
import sympy
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from ckforge.alphabet import tau
from ckforge.linalg import (BadPrime, SparseRatMatrix, kernel_basis, random_point, random_primes,
                            rank, rank_mod_p, reduce_mod_p, rref, specialize)
from ckforge.theta import build_matrix

from conftest import dense_rank

Q = Fraction


def random_sparse(rng, rows, cols, density, rank_cap=None):
    """Seeded sparse rational matrix; a rank cap is forced through a product of thin factors."""
    if rank_cap is None:
        entries = {}
        for r in range(rows):
            for c in range(cols):
                if rng.random() < density:
                    entries[(r, c)] = Q(rng.randint(-9, 9), rng.randint(1, 4))
        return SparseRatMatrix(rows, cols, entries)
    A = [[Q(rng.randint(-3, 3)) if rng.random() < density else 0 for _ in range(rank_cap)] for _ in range(rows)]
    B = [[Q(rng.randint(-3, 3), rng.randint(1, 2)) if rng.random() < density else 0 for _ in range(cols)]
         for _ in range(rank_cap)]
    entries = {}
    for r in range(rows):
        for c in range(cols):
            v = sum(A[r][k] * B[k][c] for k in range(rank_cap) if A[r][k] and B[k][c])
            if v:
                entries[(r, c)] = v
    return SparseRatMatrix(rows, cols, entries)


CASES = [(8, 8, 0.5, None), (12, 20, 0.3, None), (30, 15, 0.2, None), (40, 40, 0.1, 25),
         (60, 45, 0.15, 30), (100, 100, 0.05, None), (120, 90, 0.08, 60), (200, 200, 0.03, None),
         (200, 150, 0.05, 120)]


@pytest.mark.parametrize("rows,cols,density,cap", CASES)
def test_rank_kernel_properties(rows, cols, density, cap):
    rng = random.Random(rows * 1000 + cols)
    M = random_sparse(rng, rows, cols, density, cap)
    rk = rank(M)
    basis = kernel_basis(M)
    assert rk + len(basis) == cols
    for k in basis:
        assert not any(M.matvec(k))
    # independent oracle: sympy's exact rank over QQ
    dm = DomainMatrix([[QQ(v.numerator, v.denominator) for v in row] for row in M.dense()], M.shape, QQ)
    assert rk == dm.rank()
    if cap is not None:
        assert rk <= cap
    # kernel vectors are independent
    if basis:
        kb = DomainMatrix([[QQ(v.numerator, v.denominator) for v in k] for k in basis], (len(basis), cols), QQ)
        assert kb.rank() == len(basis)
    # modular shadow never exceeds the exact rank, and matches for random 62-bit primes
    mod = [rank_mod_p(M, p) for p in random_primes(3, rows)]
    assert all(r <= rk for r in mod)
    assert sum(r == rk for r in mod) >= 2


def test_rank_transpose_and_rref():
    rng = random.Random(11)
    for _ in range(20):
        M = random_sparse(rng, rng.randint(1, 12), rng.randint(1, 12), 0.4)
        assert rank(M) == rank(M.transpose()) == len(rref(M)[1]) == dense_rank(M.dense())


def test_examples():
    assert rank(SparseRatMatrix.from_dense([[1, 2], [2, 4]])) == 1
    assert rank(SparseRatMatrix(0, 5)) == 0
    assert kernel_basis(SparseRatMatrix.from_dense([[1, 0], [0, 1]])) == []
    assert kernel_basis(SparseRatMatrix(2, 2)) == [[1, 0], [0, 1]]
    assert rank_mod_p(SparseRatMatrix.from_dense([[1, 2], [2, 4]]), 7) == 1
    p = 1_000_000_007
    assert rank_mod_p(SparseRatMatrix.from_dense([[p, 0], [0, 1]]), p) == 1
    assert rank_mod_p(SparseRatMatrix.from_dense([[2, 1], [1, 1]]), 2) == 2  # even modulus path


def test_bad_prime():
    with pytest.raises(BadPrime):
        reduce_mod_p({(0, 0): Q(1, 7)}, 1, 1, 7)


def test_matrix_validation():
    with pytest.raises(IndexError):
        SparseRatMatrix(2, 2, {(2, 0): 1})
    assert SparseRatMatrix(1, 1, {(0, 0): 0}).nnz == 0


def test_specialize_122():
    M = build_matrix(1, 2, 2)
    for c in (1, 5, Q(3, 2)):
        S = specialize(M, {(tau(1),): c})
        # entries are multiples of f_tautau = X_tau^2 / 2
        want = [[2, 0, 0, 0], [0, 0, 2, 0], [0, 2, 0, 1]]
        got = [[v * 2 / (c * c) for v in row] for row in S.dense()]
        assert sorted(map(tuple, got)) == sorted(map(tuple, want))
        assert rank(S) == 3
        assert rank_mod_p(S, 1_000_000_007) == 3


def test_specialize_trivial():
    Z = SparseRatMatrix(3, 3)
    assert specialize(Z, {}) == Z
    I = SparseRatMatrix.from_dense([[1, 0], [0, 1]])
    assert specialize(I, {}) == I


def test_symbolic_rank_mod_p_needs_point():
    M = build_matrix(1, 2, 2)
    with pytest.raises(ValueError):
        rank_mod_p(M, 7)
    assert rank_mod_p(M, 1_000_000_007, {(tau(1),): 3}) == 3


def test_random_point_and_primes():
    x = random_point([(tau(2),), (tau(1),)], 4)
    assert x == random_point([(tau(1),), (tau(2),)], 4)
    assert all(1 <= int(v) <= 1 << 16 for v in x.values())
    ps = random_primes(3, 0)
    assert ps == random_primes(3, 0) and len(set(ps)) == 3
    assert all(sympy.isprime(p) and p.bit_length() == 62 for p in ps)
