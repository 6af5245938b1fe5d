import random
from fractions import Fraction

import pytest

from ckforge.alphabet import enumerate_words, sigma, tau
from ckforge.lyndon import (CACHE_VERSION, DepthError, LyndonConverter, LyndonPoly, cache_files,
                            evaluate, format_lyndon, parse_lyndon)
from ckforge.poly import ExponentOverflow, Poly, VarSpace, exponent_vector, mono_divides, pack, unpack
from ckforge.shuffle import f

t1, t2, s3 = tau(1), tau(2), sigma(3)


@pytest.fixture
def space():
    return VarSpace("test", ["a", "b", "c"], [1, 2, 3])


def test_pack_unpack():
    rng = random.Random(0)
    for _ in range(200):
        e = [rng.randint(0, 255) for _ in range(rng.randint(1, 12))]
        m = pack(e)
        assert exponent_vector(m, len(e)) == tuple(e)
        assert dict(unpack(m)) == {i: x for i, x in enumerate(e) if x}


def test_divides():
    assert mono_divides(pack([1, 0, 2]), pack([1, 1, 2]))
    assert not mono_divides(pack([0, 3]), pack([5, 2]))


def test_arithmetic_against_dict_oracle(space):
    rng = random.Random(1)

    def rand_poly():
        return {tuple(rng.randint(0, 3) for _ in range(3)): Fraction(rng.randint(-5, 5), rng.randint(1, 3))
                for _ in range(rng.randint(0, 5))}

    def to_poly(d):
        return Poly(space, {pack(e): c for e, c in d.items() if c})

    for _ in range(100):
        a, b = rand_poly(), rand_poly()
        prod: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                k = tuple(x + y for x, y in zip(ea, eb))
                prod[k] = prod.get(k, 0) + ca * cb
        assert to_poly(a) * to_poly(b) == to_poly(prod)
        summ = dict(a)
        for e, c in b.items():
            summ[e] = summ.get(e, 0) + c
        assert to_poly(a) + to_poly(b) == to_poly(summ)
        assert to_poly(a) - to_poly(a) == Poly(space, {})


def test_power_and_overflow(space):
    a = Poly.var(space, "a", Fraction(1))
    assert (a + 1) ** 3 == (a + 1) * (a + 1) * (a + 1)
    big = a ** 200
    with pytest.raises(ExponentOverflow):
        big * big
    with pytest.raises(ExponentOverflow):
        space.monomial({"a": 256})


def test_degree_and_variables(space):
    p = Poly(space, {pack([1, 1, 0]): 1, pack([0, 0, 1]): 2})
    assert p.degrees() == {3}
    assert p.variables() == {"a", "b", "c"}
    assert p.degree_in("a") == 1 and p.degree_in("zzz") == 0


def test_grading_matches_words():
    # every monomial of the image of f_w has Lyndon-weighted degree deg(w)
    conv = LyndonConverter()
    for v in range(1, 7):
        for w in enumerate_words(2, 5, v):
            assert conv.convert(f(*w)).degrees() == {v}


def test_depth_error():
    with pytest.raises(DepthError):
        LyndonConverter().convert_word((t1, s3), d=2)


def test_text_roundtrip():
    conv = LyndonConverter()
    for w in enumerate_words(2, 3, 5):
        p = conv.convert(f(*w))
        assert parse_lyndon(format_lyndon(p)) == p
    assert format_lyndon(LyndonPoly()) == "0"
    with pytest.raises(ValueError):
        parse_lyndon("1*Y[t1]")


def test_evaluate_missing_variable():
    with pytest.raises(KeyError):
        evaluate(LyndonPoly.x((t1,)), {})


def test_disk_cache_roundtrip(tmp_path):
    warm = LyndonConverter(tmp_path)
    words = enumerate_words(2, 3, 5)
    expected = {w: warm.convert(f(*w)) for w in words}
    path = warm.save(2, 3)
    assert path.read_text().splitlines()[0] == CACHE_VERSION
    assert cache_files(tmp_path) == [path]
    cold = LyndonConverter(tmp_path)
    assert cold.load(2, 3) > 0
    before = cold.conversions
    for w in words:
        assert cold.convert(f(*w)) == expected[w]
    assert cold.conversions == before  # every word came from disk


def test_stale_cache_ignored(tmp_path):
    (tmp_path / "lyndon-s2-d3.tsv").write_text("some other format\nt1\t1*X[t1]\n")
    assert LyndonConverter(tmp_path).load(2, 3) == 0
    assert LyndonConverter(tmp_path / "missing").load(2, 3) == 0
    assert cache_files(tmp_path / "missing") == []
