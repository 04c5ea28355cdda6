#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

The fallback is what you get with DETSTRESS_NO_NUMBA=1; this script imports
both paths directly so one run compares them side by side over
realistic budget-measurement workloads (attacked-vs-original text pairs).
"""

import time

import numpy as np

from detstress._kernels import (_jaro_jit, _jaro_numpy, _levenshtein_jit,
                                _levenshtein_numpy, USE_NUMBA)


def make_pairs(n_pairs: int, length: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    pairs = []
    for _ in range(n_pairs):
        a = rng.integers(97, 123, size=length).astype(np.int64)
        b = a.copy()
        # ~5% single-character edits, the typical attack budget
        for _ in range(max(1, length // 20)):
            b[rng.integers(0, length)] = rng.integers(97, 123)
        pairs.append((a, b))
    return pairs


def bench(fn, pairs, repeats: int = 3) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        for a, b in pairs:
            fn(a, b)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    print(f"numba available and enabled: {USE_NUMBA}")
    for length, n_pairs in ((120, 400), (700, 200), (2000, 50)):
        pairs = make_pairs(n_pairs, length)
        # trigger JIT compilation outside the timed region
        _levenshtein_jit(*pairs[0])
        _jaro_jit(*pairs[0])
        t_jit = bench(_levenshtein_jit, pairs)
        t_np = bench(_levenshtein_numpy, pairs)
        print(f"levenshtein len={length:5d} x{n_pairs:4d}: "
              f"numba {t_jit:8.4f}s  numpy {t_np:8.4f}s  "
              f"speedup {t_np / t_jit:5.1f}x")
        t_jit = bench(_jaro_jit, pairs)
        t_np = bench(_jaro_numpy, pairs)
        print(f"jaro        len={length:5d} x{n_pairs:4d}: "
              f"numba {t_jit:8.4f}s  numpy {t_np:8.4f}s  "
              f"speedup {t_np / t_jit:5.1f}x")


if __name__ == "__main__":
    main()
