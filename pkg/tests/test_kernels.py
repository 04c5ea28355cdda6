"""The numba and numpy kernel paths must agree exactly."""

import numpy as np

from detstress._kernels import (_jaro_jit, _jaro_numpy, _levenshtein_jit,
                                _levenshtein_numpy)


def _random_pair(rng, max_len=40):
    a = rng.integers(0, 8, size=rng.integers(0, max_len)).astype(np.int64)
    b = rng.integers(0, 8, size=rng.integers(0, max_len)).astype(np.int64)
    return a, b


def test_levenshtein_paths_agree():
    rng = np.random.default_rng(3)
    for _ in range(300):
        a, b = _random_pair(rng)
        assert _levenshtein_jit(a, b) == _levenshtein_numpy(a, b)


def test_jaro_paths_agree():
    rng = np.random.default_rng(4)
    for _ in range(300):
        a, b = _random_pair(rng, max_len=25)
        assert abs(_jaro_jit(a, b) - _jaro_numpy(a, b)) < 1e-12


def test_empty_inputs():
    e = np.empty(0, dtype=np.int64)
    x = np.array([1, 2, 3], dtype=np.int64)
    assert _levenshtein_jit(e, x) == 3
    assert _levenshtein_jit(x, e) == 3
    assert _levenshtein_numpy(e, e) == 0
    assert _jaro_jit(e, e) == 1.0
    assert _jaro_jit(e, x) == 0.0
