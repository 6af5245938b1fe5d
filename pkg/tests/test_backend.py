"""Compiled kernels agree with the pure-Python fallback."""

import os
import random
import subprocess
import sys

import numpy as np
import pytest

from ckforge import _backend, _fallback
from ckforge.linalg import random_primes

from conftest import brute_shuffle

try:
    from ckforge import _kernels
except ImportError:  # pragma: no cover - the extension is optional
    _kernels = None

needs_ext = pytest.mark.skipif(_kernels is None, reason="compiled extension not built")


def test_selected_backend():
    assert _backend.NAME == ("cython" if _kernels is not None else "python")


def test_pure_env_forces_fallback():
    env = dict(os.environ, CKFORGE_PURE="1")
    out = subprocess.run([sys.executable, "-c", "from ckforge import _backend; print(_backend.NAME)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_fallback_shuffle_brute():
    rng = random.Random(1)
    for _ in range(200):
        u = tuple(rng.randint(1, 3) for _ in range(rng.randint(0, 4)))
        v = tuple(rng.randint(1, 3) for _ in range(rng.randint(0, 4)))
        assert _fallback.shuffle_words(u, v) == dict(brute_shuffle(u, v))


@needs_ext
def test_shuffle_agree():
    rng = random.Random(2)
    for _ in range(300):
        u = tuple(rng.randint(1, 4) for _ in range(rng.randint(0, 5)))
        v = tuple(rng.randint(1, 4) for _ in range(rng.randint(0, 5)))
        assert dict(_kernels.shuffle_words(u, v)) == _fallback.shuffle_words(u, v)


def _random_low_rank(rng, rows, cols, r, p):
    a = rng.integers(0, 1 << 20, size=(rows, r), dtype=np.uint64)
    b = rng.integers(0, 1 << 20, size=(r, cols), dtype=np.uint64)
    # product over the integers stays below 2**62 for these sizes; reduce mod p
    return (a.astype(object).dot(b.astype(object)) % p).astype(np.uint64)


@needs_ext
@pytest.mark.parametrize("shape,r", [((5, 7), 3), ((40, 30), 12), ((80, 120), 80), ((1, 1), 0)])
def test_rank_agree(shape, r):
    rng = np.random.default_rng(3)
    for p in random_primes(3, 9) + [1_000_000_007, 3]:
        a = _random_low_rank(rng, *shape, r, p)
        assert _kernels.rank_mod_p(a, p) == _fallback.rank_mod_p(a, p)


def test_rank_examples_both():
    backends = [_fallback] + ([_kernels] if _kernels else [])
    for k in backends:
        assert k.rank_mod_p(np.array([[1, 2], [2, 4]], dtype=np.uint64), 7) == 1
        assert k.rank_mod_p(np.zeros((0, 3), dtype=np.uint64), 7) == 0
        assert k.rank_mod_p(np.array([[0, 0], [0, 1]], dtype=np.uint64), 7) == 1
