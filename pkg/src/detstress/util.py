"""Shared helpers: seeding, tokenization, sentence boundaries."""

from __future__ import annotations

import hashlib
import re

import numpy as np

MASK64 = 0xFFFFFFFFFFFFFFFF

_WS_SPLIT = re.compile(r"(\s+)")

SENTENCE_ENDERS = (".", "!", "?")


def mix64(x: int) -> int:
    """splitmix64 finalizer; stable 64-bit mixing across platforms."""
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return (x ^ (x >> 31)) & MASK64


def derive_seed(*parts) -> int:
    """Map an arbitrary tuple of parts (ints, strings) to a stable 63-bit seed.

    All randomness in the toolkit is derived from keys like
    (global_seed, cell_key, doc_id) so results are schedule-independent.
    """
    h = hashlib.sha256()
    for p in parts:
        h.update(repr(p).encode("utf-8"))
        h.update(b"\x1f")
    return int.from_bytes(h.digest()[:8], "big") >> 1


def rng_from(*parts) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(derive_seed(*parts)))


def tokenize(text: str) -> list[str]:
    """Whitespace tokenization (Unicode whitespace), the toolkit-wide convention."""
    return text.split()


def split_preserving_ws(text: str) -> list[str]:
    """Split into alternating word / whitespace chunks, preserving the exact
    separators so edits can be spliced back without disturbing layout."""
    return [chunk for chunk in _WS_SPLIT.split(text) if chunk]


def is_sentence_end(token: str) -> bool:
    """A token terminates a sentence when it ends in '.', '!' or '?'.

    Tokens are whitespace-delimited, so "followed by whitespace or
    end-of-text" holds by construction.
    """
    return token.endswith(SENTENCE_ENDERS)


def split_sentences(text: str) -> list[str]:
    """Split into sentences on token-terminal enders; whitespace-normalized.

    The trailing fragment (no terminal punctuation) is kept as a sentence.
    """
    sentences: list[str] = []
    current: list[str] = []
    for token in tokenize(text):
        current.append(token)
        if is_sentence_end(token):
            sentences.append(" ".join(current))
            current = []
    if current:
        sentences.append(" ".join(current))
    return sentences
