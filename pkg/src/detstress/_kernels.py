"""Hot string-metric kernels: Levenshtein DP and Jaro matching.

Both carry a numba ``@njit`` build and a pure-numpy fallback. The fallback is
selected when numba is unavailable or when ``DETSTRESS_NO_NUMBA=1`` is set,
which keeps results identical bit-for-bit either way (integer DP).
``benchmarks/bench_kernels.py`` compares the two paths.
"""

from __future__ import annotations

import os

import numpy as np

USE_NUMBA = os.environ.get("DETSTRESS_NO_NUMBA", "") not in ("1", "true", "yes")

if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a declared dependency
        USE_NUMBA = False

if not USE_NUMBA:
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


@njit(cache=True)
def _levenshtein_jit(a: np.ndarray, b: np.ndarray) -> int:
    n, m = len(a), len(b)
    if n == 0:
        return m
    if m == 0:
        return n
    prev = np.arange(m + 1, dtype=np.int64)
    curr = np.empty(m + 1, dtype=np.int64)
    for i in range(1, n + 1):
        curr[0] = i
        ai = a[i - 1]
        for j in range(1, m + 1):
            cost = 0 if ai == b[j - 1] else 1
            d = prev[j - 1] + cost
            if prev[j] + 1 < d:
                d = prev[j] + 1
            if curr[j - 1] + 1 < d:
                d = curr[j - 1] + 1
            curr[j] = d
        prev, curr = curr, prev
    return int(prev[m])


def _levenshtein_numpy(a: np.ndarray, b: np.ndarray) -> int:
    n, m = len(a), len(b)
    if n == 0:
        return m
    if m == 0:
        return n
    prev = np.arange(m + 1, dtype=np.int64)
    idx = np.arange(m + 1, dtype=np.int64)
    for i in range(1, n + 1):
        t = np.empty(m + 1, dtype=np.int64)
        t[0] = i
        np.minimum(prev[:-1] + (b != a[i - 1]), prev[1:] + 1, out=t[1:])
        # deletion chain: curr[j] = min_{k<=j} (t[k] + j - k)
        prev = np.minimum.accumulate(t - idx) + idx
    return int(prev[m])


@njit(cache=True)
def _jaro_jit(a: np.ndarray, b: np.ndarray) -> float:
    n, m = len(a), len(b)
    if n == 0 and m == 0:
        return 1.0
    if n == 0 or m == 0:
        return 0.0
    window = max(n, m) // 2 - 1
    if window < 0:
        window = 0
    a_match = np.zeros(n, dtype=np.bool_)
    b_match = np.zeros(m, dtype=np.bool_)
    matches = 0
    for i in range(n):
        lo = i - window if i - window > 0 else 0
        hi = i + window + 1 if i + window + 1 < m else m
        for j in range(lo, hi):
            if not b_match[j] and a[i] == b[j]:
                a_match[i] = True
                b_match[j] = True
                matches += 1
                break
    if matches == 0:
        return 0.0
    transpositions = 0
    j = 0
    for i in range(n):
        if a_match[i]:
            while not b_match[j]:
                j += 1
            if a[i] != b[j]:
                transpositions += 1
            j += 1
    t = transpositions / 2.0
    return (matches / n + matches / m + (matches - t) / matches) / 3.0


def _jaro_numpy(a: np.ndarray, b: np.ndarray) -> float:
    n, m = len(a), len(b)
    if n == 0 and m == 0:
        return 1.0
    if n == 0 or m == 0:
        return 0.0
    window = max(max(n, m) // 2 - 1, 0)
    b_match = np.zeros(m, dtype=bool)
    a_match = np.zeros(n, dtype=bool)
    matches = 0
    for i in range(n):
        lo = max(i - window, 0)
        hi = min(i + window + 1, m)
        hits = np.nonzero((b[lo:hi] == a[i]) & ~b_match[lo:hi])[0]
        if hits.size:
            b_match[lo + hits[0]] = True
            a_match[i] = True
            matches += 1
    if matches == 0:
        return 0.0
    transpositions = int(np.sum(a[a_match] != b[b_match]))
    t = transpositions / 2.0
    return (matches / n + matches / m + (matches - t) / matches) / 3.0


if USE_NUMBA:
    levenshtein_kernel = _levenshtein_jit
    jaro_kernel = _jaro_jit
else:
    levenshtein_kernel = _levenshtein_numpy
    jaro_kernel = _jaro_numpy
