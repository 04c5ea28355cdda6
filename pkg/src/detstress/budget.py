"""Attack-budget measurement between original and attacked text.

Levenshtein edit distance (codepoint or UTF-8 byte accounting), Jaro
similarity, a character-n-gram cosine proxy for embedding similarity, and
backend perplexity. The report schema reserves field names for external
similarity metrics (mauve, bertscore, bartscore) so richer tools can append
them; the built-in proxies never claim equivalence.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ._kernels import jaro_kernel, levenshtein_kernel


class Accounting(str, Enum):
    CODEPOINT = "codepoint"
    # byte mode runs the DP over UTF-16-LE bytes: an ASCII substitution still
    # costs 1 (only the low byte changes) while inserting a BMP codepoint like
    # U+200B costs 2, matching the plotted budget axes for format attacks.
    BYTE = "byte"


@dataclass(frozen=True)
class BudgetReport:
    edit_distance: int
    jaro: float
    ngram_cosine: float
    accounting: Accounting = Accounting.CODEPOINT
    perplexity: float | None = None
    # reserved for external tools; populated only via score ingestion
    mauve: float | None = None
    bertscore: float | None = None
    bartscore: float | None = None


def _codepoints(text: str) -> np.ndarray:
    return np.array([ord(c) for c in text], dtype=np.int64)


def _bytes(text: str) -> np.ndarray:
    return np.frombuffer(text.encode("utf-16-le"), dtype=np.uint8).astype(np.int64)


def edit_distance(a: str, b: str,
                  accounting: Accounting | str = Accounting.CODEPOINT) -> int:
    """Levenshtein distance: insertions, deletions, substitutions."""
    accounting = Accounting(accounting)
    if a == b:
        return 0
    if accounting is Accounting.BYTE:
        return int(levenshtein_kernel(_bytes(a), _bytes(b)))
    return int(levenshtein_kernel(_codepoints(a), _codepoints(b)))


def jaro_similarity(a: str, b: str) -> float:
    """Jaro similarity over codepoints: 1.0 iff identical, 0.0 when no
    characters match within the search window."""
    if a == b:
        return 1.0
    return float(jaro_kernel(_codepoints(a), _codepoints(b)))


def ngram_cosine(a: str, b: str, n: int = 3) -> float:
    """Cosine similarity of character n-gram count vectors."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if a == b:
        return 1.0
    grams_a = Counter(a[i:i + n] for i in range(len(a) - n + 1))
    grams_b = Counter(b[i:i + n] for i in range(len(b) - n + 1))
    if not grams_a or not grams_b:
        return 0.0
    dot = sum(cnt * grams_b.get(g, 0) for g, cnt in grams_a.items())
    norm_a = math.sqrt(sum(c * c for c in grams_a.values()))
    norm_b = math.sqrt(sum(c * c for c in grams_b.values()))
    return dot / (norm_a * norm_b)


def perplexity(text: str, backend) -> float:
    """exp(-mean token logprob) under the backend's scorer."""
    scores = backend.score(text)
    if not scores:
        raise ValueError("text too short to score for perplexity")
    mean_lp = float(np.mean([s.logprob for s in scores]))
    return math.exp(-mean_lp)


def measure(original: str, attacked: str,
            accounting: Accounting | str = Accounting.CODEPOINT,
            backend=None) -> BudgetReport:
    """Full budget report for one (original, attacked) pair."""
    accounting = Accounting(accounting)
    ppl = None
    if backend is not None:
        try:
            ppl = perplexity(attacked, backend)
        except ValueError:
            ppl = None
    return BudgetReport(
        edit_distance=edit_distance(original, attacked, accounting),
        jaro=jaro_similarity(original, attacked),
        ngram_cosine=ngram_cosine(original, attacked),
        accounting=accounting,
        perplexity=ppl,
    )
