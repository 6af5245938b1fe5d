# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: word shuffles and rank over a 62-bit prime field.

Field arithmetic uses Montgomery multiplication with R = 2**64, so the inner
elimination loop needs one 64x64->128 multiply pair and no division.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free

cnp.import_array()

cdef extern from *:
    """
    typedef unsigned __int128 ck_u128;
    """
    # Cython only needs to know this is an unsigned integer type
    ctypedef unsigned long long u128 "ck_u128"


cdef inline uint64_t redc(u128 t, uint64_t p, uint64_t pneg) nogil:
    cdef uint64_t m = <uint64_t>t * pneg
    cdef uint64_t r = <uint64_t>((t + <u128>m * p) >> 64)
    if r >= p:
        r -= p
    return r


cdef inline uint64_t mont_mul(uint64_t a, uint64_t b, uint64_t p, uint64_t pneg) nogil:
    return redc(<u128>a * b, p, pneg)


cdef uint64_t neg_inverse_2_64(uint64_t p):
    # Newton iteration for p^-1 mod 2^64, then negate
    cdef uint64_t inv = p
    cdef int i
    for i in range(6):
        inv *= 2 - p * inv
    return <uint64_t>(0) - inv


def rank_mod_p(mat, p):
    """Rank over GF(p) of an integer matrix with entries in [0, p); p odd, p < 2**62."""
    cdef cnp.ndarray[cnp.uint64_t, ndim=2] a = np.array(mat, dtype=np.uint64, copy=True)
    if a.size == 0:
        return 0
    cdef Py_ssize_t rows = a.shape[0], cols = a.shape[1]
    if rows > cols:
        a = np.ascontiguousarray(a.T)
        rows, cols = cols, rows
    else:
        a = np.ascontiguousarray(a)
    cdef uint64_t pp = <uint64_t>int(p)
    if pp % 2 == 0 or pp >= (<uint64_t>1 << 62):
        raise ValueError("modulus must be odd and below 2**62")
    cdef uint64_t pneg = neg_inverse_2_64(pp)
    cdef uint64_t r2 = <uint64_t>((1 << 128) % int(p))   # R^2 mod p
    cdef uint64_t *A = <uint64_t *>a.data
    cdef Py_ssize_t i, j, c, rank = 0, piv
    cdef uint64_t f, t, x, inv_m
    # to Montgomery form
    with nogil:
        for i in range(rows * cols):
            A[i] = mont_mul(A[i] % pp, r2, pp, pneg)
    for c in range(cols):
        if rank == rows:
            break
        piv = -1
        for i in range(rank, rows):
            if A[i * cols + c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(c, cols):
                t = A[piv * cols + j]
                A[piv * cols + j] = A[rank * cols + j]
                A[rank * cols + j] = t
        # inverse of the pivot, back in Montgomery form
        x = redc(<u128>A[rank * cols + c], pp, pneg)
        inv_m = mont_mul(<uint64_t>pow(int(x), -1, int(p)), r2, pp, pneg)
        with nogil:
            for i in range(rank + 1, rows):
                t = A[i * cols + c]
                if t == 0:
                    continue
                f = mont_mul(t, inv_m, pp, pneg)
                A[i * cols + c] = 0
                for j in range(c + 1, cols):
                    x = A[rank * cols + j]
                    if x != 0:
                        x = mont_mul(f, x, pp, pneg)
                        t = A[i * cols + j]
                        A[i * cols + j] = t - x if t >= x else t + (pp - x)
        rank += 1
    return rank


def shuffle_words(tuple u, tuple v):
    """Multiset of interleavings of ``u`` and ``v`` as {word: multiplicity}."""
    cdef Py_ssize_t m = len(u), n = len(v), total, k, i, top, iu, iv
    if m == 0:
        return {v: 1}
    if n == 0:
        return {u: 1}
    total = m + n
    cdef int *pos = <int *>malloc(m * sizeof(int))
    if pos == NULL:
        raise MemoryError()
    out = {}
    cdef list w = [None] * total
    try:
        for k in range(m):
            pos[k] = k
        while True:
            iu = 0
            iv = 0
            for i in range(total):
                if iu < m and pos[iu] == i:
                    w[i] = u[iu]
                    iu += 1
                else:
                    w[i] = v[iv]
                    iv += 1
            key = tuple(w)
            out[key] = out.get(key, 0) + 1
            # next m-combination of range(total), lexicographic
            top = m - 1
            while top >= 0 and pos[top] == total - m + top:
                top -= 1
            if top < 0:
                break
            pos[top] += 1
            for k in range(top + 1, m):
                pos[k] = pos[k - 1] + 1
    finally:
        free(pos)
    return out
