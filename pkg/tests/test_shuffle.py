import itertools
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from ckforge.alphabet import alphabet, enumerate_words, sigma, tau, word_degree
from ckforge.lyndon import LyndonPoly, evaluate, format_lyndon, parse_lyndon, to_lyndon_poly
from ckforge.poly import mono_degree
from ckforge.shuffle import (ShuffleElem, TensorElem, apply_left, apply_right, coproduct, f,
                             format_shuffle, parse_shuffle, shuffle)

from conftest import brute_shuffle, dense_rank

t1, t2, s3 = tau(1), tau(2), sigma(3)
# two primes with sigma_3, sigma_5, sigma_7 covers every shape up to degree 8
LETTERS = alphabet(2, 7)


def words_upto(v, s=2, d=3):
    return [w for k in range(v + 1) for w in enumerate_words(s, d, k)]


SMALL = words_upto(5)

SEEDED = settings(max_examples=1000, derandomize=True, deadline=None,
                  suppress_health_check=[HealthCheck.too_slow])


@st.composite
def word_pair(draw, max_total=8):
    """Two words with total degree <= max_total."""
    def word(budget):
        w = []
        while True:
            options = [a for a in LETTERS if word_degree((a,)) <= budget]
            if not options or not draw(st.booleans()):
                return tuple(w)
            a = draw(st.sampled_from(options))
            w.append(a)
            budget -= word_degree((a,))
    u = word(max_total)
    v = word(max_total - word_degree(u))
    return u, v


# -- examples -----------------------------------------------------------------------

def test_examples():
    assert f(t1) * ShuffleElem.one() == f(t1)
    assert f(t1) * f(t1) == f(t1, t1) * 2
    assert coproduct(ShuffleElem.one()).terms == {((), ()): 1}
    assert coproduct(f(s3)).terms == {((), (s3,)): 1, ((s3,), ()): 1}
    assert to_lyndon_poly(f(t1)) == LyndonPoly.x((t1,))
    assert to_lyndon_poly(f(t1, t1)) == LyndonPoly.x((t1,)) ** 2 * Fraction(1, 2)
    X1, X2, X12 = LyndonPoly.x((t1,)), LyndonPoly.x((t2,)), LyndonPoly.x((t1, t2))
    assert to_lyndon_poly(f(t2, t1)) == X1 * X2 - X12
    assert evaluate(X1 * X2 - X12, {(t1,): 1, (t2,): 1, (t1, t2): 1}) == 0
    assert evaluate(X1 ** 2 * Fraction(1, 2), {(t1,): 4}) == 8
    assert evaluate(LyndonPoly.constant_poly(7), {}) == 7


def test_no_stored_zeros():
    a = f(t1) - f(t1)
    assert a.terms == {} and a == ShuffleElem.zero()


def test_text_roundtrip():
    a = f(t1, t2) + f(t2, t1) * Fraction(-1, 2) + f(s3) * 3
    assert parse_shuffle(format_shuffle(a)) == a
    assert format_shuffle(f(t1, t2) + f(t2, t1)) == "1*t1.t2 + 1*t2.t1"
    p = to_lyndon_poly(f(t2, t1, s3, t1))
    assert parse_lyndon(format_lyndon(p)) == p


def test_homogeneous_parts_reassemble():
    a = f(t1) + f(t1, s3) * 2 + f(t2, t2, t1) - ShuffleElem.one()
    parts = a.homogeneous_parts()
    assert set(parts) == {0, 1, 3, 4}
    total = ShuffleElem.zero()
    for p in parts.values():
        total = total + p
    assert total == a


# -- exhaustive at degree <= 5 --------------------------------------------------------

def _pairs(max_total):
    for u in SMALL:
        for v in SMALL:
            if word_degree(u) + word_degree(v) <= max_total:
                yield u, v


def test_duality_exhaustive():
    for u, v in _pairs(5):
        assert shuffle(f(*u), f(*v)).terms == dict(brute_shuffle(u, v))


def test_commutative_associative_exhaustive():
    ws = words_upto(4, s=2, d=3)
    for u, v in _pairs(5):
        assert f(*u) * f(*v) == f(*v) * f(*u)
    for u, v, w in itertools.product(ws, repeat=3):
        if word_degree(u + v + w) <= 4:
            a, b, c = f(*u), f(*v), f(*w)
            assert (a * b) * c == a * (b * c)


def test_coassociative_exhaustive():
    for w in SMALL:
        t = coproduct(f(*w))
        assert apply_left(t, coproduct) == apply_right(t, coproduct)


def test_hopf_compatibility_exhaustive():
    for u, v in _pairs(5):
        a, b = f(*u), f(*v)
        assert coproduct(a * b) == coproduct(a) * coproduct(b)


def test_ring_isomorphism_exhaustive():
    for u, v in _pairs(5):
        a, b = f(*u), f(*v)
        assert to_lyndon_poly(a * b) == to_lyndon_poly(a) * to_lyndon_poly(b)


@pytest.mark.parametrize("v", range(1, 7))
def test_presentation_is_bijective(v):
    words = enumerate_words(2, 5, v)
    images = [to_lyndon_poly(f(*w)) for w in words]
    monos = sorted({m for p in images for m in p.terms})
    for p in images:
        assert {mono_degree(p.space, m) for m in p.terms} == {v}
    # injective with as many monomials as words: an isomorphism in each degree
    assert len(monos) == len(words)
    assert dense_rank([[p.terms.get(m, 0) for m in monos] for p in images]) == len(words)


# -- seeded random, degree <= 8 --------------------------------------------------------

@SEEDED
@given(word_pair())
def test_random_duality(pair):
    u, v = pair
    assert shuffle(f(*u), f(*v)).terms == dict(brute_shuffle(u, v))


@SEEDED
@given(word_pair())
def test_random_ring_isomorphism(pair):
    u, v = pair
    a, b = f(*u), f(*v)
    assert to_lyndon_poly(a * b) == to_lyndon_poly(a) * to_lyndon_poly(b)


@SEEDED
@given(word_pair())
def test_random_hopf_compatibility(pair):
    u, v = pair
    a, b = f(*u), f(*v)
    assert coproduct(a * b) == coproduct(a) * coproduct(b)


@settings(max_examples=300, derandomize=True, deadline=None)
@given(word_pair(), st.sampled_from(words_upto(2)))
def test_random_associativity(pair, w):
    a, b, c = f(*pair[0]), f(*pair[1]), f(*w)
    assert (a * b) * c == a * (b * c)
