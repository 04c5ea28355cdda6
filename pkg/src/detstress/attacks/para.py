"""Meaning-preserving rewrite attacks: model-free synonym substitution plus
backend-delegated synonym / span / sentence paraphrase operations.

Also hosts the toy paraphrase used by the builtin backend: synonym
substitution plus seeded reordering, strengths controlled by the same
lex/order diversity hints a full paraphraser would receive. It is a
stand-in for desk-scale testing, not a claim of paraphrase quality.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path

import numpy as np

from ..errors import DataError
from ..util import rng_from, split_preserving_ws, split_sentences, tokenize

logger = logging.getLogger(__name__)

DEFAULT_SUB_RATE = 0.3  # toy paraphrase substitution rate when no hint given


class ParaKind(str, Enum):
    SYN_FREE = "syn_free"
    SYN_MODEL = "syn_model"
    SPAN = "span"
    INNER_SENT = "inner_sent"
    INTER_SENT = "inter_sent"


@dataclass(frozen=True)
class ParaAttackConfig:
    kind: ParaKind
    rate: float = 0.3
    span_len: int = 2
    lex_diversity: int | None = None
    order_diversity: int | None = None
    seed: int = 0

    def __post_init__(self):
        if not (0.0 <= self.rate <= 1.0):
            raise ValueError("rate must be in [0, 1]")
        if self.span_len < 1:
            raise ValueError("span_len must be >= 1")


class SynonymDictionary:
    """headword -> ranked synonym list; lookups are case-insensitive and the
    substitution restores an initial capital. Multiword synonyms are rejected
    at load time to preserve token alignment."""

    def __init__(self, entries: dict[str, list[str]]):
        cleaned: dict[str, list[str]] = {}
        for head, syns in entries.items():
            head_l = head.lower()
            kept = [s for s in syns if s and not any(c.isspace() for c in s)]
            dropped = len(syns) - len(kept)
            if dropped:
                logger.debug("dictionary: dropped %d multiword synonyms of %r",
                             dropped, head)
            kept = [s.lower() for s in kept]
            if not kept:
                continue
            if kept[0] == head_l:
                raise DataError(f"headword {head!r} maps to itself first")
            cleaned[head_l] = kept
        self.entries = cleaned

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, word: str) -> bool:
        return word.lower() in self.entries

    def lookup(self, word: str) -> list[str]:
        return list(self.entries.get(word.lower(), []))

    def substitute(self, word: str) -> str | None:
        """Top-ranked synonym with source casing for an initial capital."""
        syns = self.entries.get(word.lower())
        if not syns:
            return None
        out = syns[0]
        if word[:1].isupper():
            out = out[:1].upper() + out[1:]
        return out

    @staticmethod
    def load(path: str | Path) -> "SynonymDictionary":
        entries: dict[str, list[str]] = {}
        with Path(path).open("r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.rstrip("\n")
                if not line or line.startswith("#"):
                    continue
                parts = line.split("\t")
                if len(parts) != 2:
                    raise DataError(
                        f"{path}:{lineno}: expected 'headword<TAB>syn1,syn2,...'")
                entries[parts[0]] = [s for s in parts[1].split(",") if s]
        return SynonymDictionary(entries)

    @staticmethod
    def bundled() -> "SynonymDictionary":
        ref = resources.files("detstress").joinpath("data/synonyms.tsv")
        with resources.as_file(ref) as path:
            return SynonymDictionary.load(path)


def load_stoplist() -> frozenset[str]:
    ref = resources.files("detstress").joinpath("data/stoplist.txt")
    return frozenset(ref.read_text(encoding="utf-8").split())


_STOPLIST: frozenset[str] | None = None


def _stoplist() -> frozenset[str]:
    global _STOPLIST
    if _STOPLIST is None:
        _STOPLIST = load_stoplist()
    return _STOPLIST


def _split_affixes(word: str) -> tuple[str, str, str]:
    """Strip non-letter prefix/suffix so 'barn.' substitutes its core."""
    start, end = 0, len(word)
    while start < end and not word[start].isalpha():
        start += 1
    while end > start and not word[end - 1].isalpha():
        end -= 1
    return word[:start], word[start:end], word[end:]


def _eligible(core: str) -> bool:
    return bool(core) and core.lower() not in _stoplist()


def synonym_substitute_free(text: str, config: ParaAttackConfig,
                            dictionary: SynonymDictionary) -> tuple[str, int]:
    """Replace selected eligible words with their top dictionary synonym.
    Pronouns/prepositions (the bundled closed-class stop-list) are never
    substituted; words absent from the dictionary are skipped."""
    if config.kind is not ParaKind.SYN_FREE:
        raise ValueError("config.kind must be syn_free")
    rng = rng_from("para-synfree", config.seed)
    chunks = split_preserving_ws(text)
    count = 0
    for i, chunk in enumerate(chunks):
        if chunk.isspace():
            continue
        prefix, core, suffix = _split_affixes(chunk)
        if not _eligible(core):
            continue
        if rng.random() >= config.rate:
            continue
        replacement = dictionary.substitute(core)
        if replacement is None:
            logger.debug("syn_free: %r not in dictionary", core)
            continue
        chunks[i] = prefix + replacement + suffix
        count += 1
    return "".join(chunks), count


def synonym_substitute_model(text: str, config: ParaAttackConfig,
                             backend) -> tuple[str, int]:
    """Model-based variant: candidate synonyms come from the backend given
    the sentence context; the first suggestion wins."""
    if config.kind is not ParaKind.SYN_MODEL:
        raise ValueError("config.kind must be syn_model")
    rng = rng_from("para-synmodel", config.seed)
    sentences = split_sentences(text)
    chunks = split_preserving_ws(text)
    count = 0
    sent_idx = 0
    consumed = 0
    for i, chunk in enumerate(chunks):
        if chunk.isspace():
            continue
        while (sent_idx < len(sentences) - 1
               and consumed >= len(tokenize(sentences[sent_idx]))):
            sent_idx += 1
            consumed = 0
        consumed += 1
        prefix, core, suffix = _split_affixes(chunk)
        if not _eligible(core):
            continue
        if rng.random() >= config.rate:
            continue
        suggestions = backend.synonyms(core, context=sentences[sent_idx])
        if not suggestions:
            continue
        replacement = suggestions[0]
        if core[:1].isupper():
            replacement = replacement[:1].upper() + replacement[1:]
        chunks[i] = prefix + replacement + suffix
        count += 1
    return "".join(chunks), count


def choose_spans(n_tokens: int, rate: float, span_len: int,
                 rng: np.random.Generator) -> list[tuple[int, int]]:
    """Disjoint [start, end) spans of span_len covering ~rate of the tokens."""
    if n_tokens < span_len or rate <= 0:
        return []
    n_spans = int(round(rate * n_tokens / span_len))
    n_spans = min(n_spans, n_tokens // span_len)
    if n_spans == 0:
        return []
    starts = np.arange(0, n_tokens - span_len + 1)
    order = rng.permutation(len(starts))
    chosen: list[int] = []
    taken = np.zeros(n_tokens, dtype=bool)
    for idx in order:
        s = int(starts[idx])
        if taken[s:s + span_len].any():
            continue
        chosen.append(s)
        taken[s:s + span_len] = True
        if len(chosen) == n_spans:
            break
    return sorted((s, s + span_len) for s in chosen)


def span_perturb(text: str, config: ParaAttackConfig, backend) -> str:
    """Mask disjoint token spans and let the backend refill them."""
    if config.kind is not ParaKind.SPAN:
        raise ValueError("config.kind must be span")
    rng = rng_from("para-span", config.seed)
    tokens = tokenize(text)
    spans = choose_spans(len(tokens), config.rate, config.span_len, rng)
    if not spans:
        return text
    return backend.mask_fill(text, spans, seed=config.seed)


def paraphrase_sentences(text: str, config: ParaAttackConfig, backend) -> str:
    """inner_sent: paraphrase each selected sentence independently and rejoin
    in order. inter_sent: send the whole text once with diversity hints."""
    if config.kind is ParaKind.INTER_SENT:
        return backend.paraphrase(text, lex_diversity=config.lex_diversity,
                                  order_diversity=config.order_diversity,
                                  seed=config.seed)
    if config.kind is not ParaKind.INNER_SENT:
        raise ValueError("config.kind must be inner_sent or inter_sent")
    rng = rng_from("para-inner", config.seed)
    sentences = split_sentences(text)
    out = []
    for i, sentence in enumerate(sentences):
        if rng.random() < config.rate:
            try:
                para = backend.paraphrase(
                    sentence, lex_diversity=config.lex_diversity,
                    order_diversity=config.order_diversity,
                    seed=config.seed + i + 1)
            except Exception as exc:
                logger.warning("paraphrase backend failed on sentence %d: %s",
                               i, exc)
                para = ""
            if not para.strip():
                logger.warning("empty paraphrase for sentence %d; keeping "
                               "original", i)
                para = sentence
            out.append(para)
        else:
            out.append(sentence)
    return " ".join(out)


# ---------------------------------------------------------------------------
# Toy paraphrase (builtin backend implementation)
# ---------------------------------------------------------------------------

def toy_paraphrase(text: str, dictionary: SynonymDictionary,
                   lex_diversity: int | None = None,
                   order_diversity: int | None = None, seed: int = 0) -> str:
    """Synonym substitution plus seeded reordering.

    lex_diversity scales the substitution rate (default 30); order_diversity
    adds intra-sentence word shuffling and extra sentence swaps on top of the
    default single adjacent-sentence swap. Guarantees a visible change when
    the text has any dictionary-covered word.
    """
    rng = rng_from("toy-paraphrase", seed)
    sub_rate = DEFAULT_SUB_RATE if lex_diversity is None else lex_diversity / 100.0
    chunks = split_preserving_ws(text)
    covered_at = None
    changed = False
    for i, chunk in enumerate(chunks):
        if chunk.isspace():
            continue
        prefix, core, suffix = _split_affixes(chunk)
        if not _eligible(core) or core not in dictionary:
            continue
        if covered_at is None:
            covered_at = i
        if rng.random() >= sub_rate:
            continue
        replacement = dictionary.substitute(core)
        chunks[i] = prefix + replacement + suffix
        changed = True
    out = "".join(chunks)

    sentences = split_sentences(out)
    order_d = 0.0 if order_diversity is None else order_diversity / 100.0
    if len(sentences) >= 2:
        n_swaps = 1 + int(round(order_d * (len(sentences) - 1)))
        for _ in range(n_swaps):
            j = int(rng.integers(len(sentences) - 1))
            sentences[j], sentences[j + 1] = sentences[j + 1], sentences[j]
        changed = True
    if order_d > 0:
        for k, sentence in enumerate(sentences):
            words = tokenize(sentence)
            n_move = int(round(order_d * len(words)))
            if n_move >= 2:
                pos = rng.choice(len(words), size=n_move, replace=False)
                pos = np.sort(pos)
                perm = rng.permutation(n_move)
                moved = [words[pos[p]] for p in perm]
                for slot, w in zip(pos, moved):
                    words[int(slot)] = w
                sentences[k] = " ".join(words)
                changed = True
    out = " ".join(sentences)

    if not changed and out == text and covered_at is not None:
        prefix, core, suffix = _split_affixes(chunks[covered_at])
        chunks[covered_at] = prefix + dictionary.substitute(core) + suffix
        out = "".join(chunks)
    return out
