"""Post-generation character-level attacks: typos, homoglyphs, format chars.

Each whitespace word is independently selected with the per-word probability
(the budget knob) and receives at most one edit. Budgets are later measured
as edit distance, so the reported edit count is an upper bound on it.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path

import numpy as np

from ..errors import DataError
from ..util import is_sentence_end, rng_from, split_preserving_ws

logger = logging.getLogger(__name__)

ZWS = "​"
SHIFT_CHARS = ("\n", "\r", "")

# Relative frequency of letters in English prose, used to weight which
# character of a selected word gets edited.
LETTER_FREQUENCIES = {
    "e": 12.702, "t": 9.056, "a": 8.167, "o": 7.507, "i": 6.966, "n": 6.749,
    "s": 6.327, "h": 6.094, "r": 5.987, "d": 4.253, "l": 4.025, "c": 2.782,
    "u": 2.758, "m": 2.406, "w": 2.360, "f": 2.228, "g": 2.015, "y": 1.974,
    "p": 1.929, "b": 1.492, "v": 0.978, "k": 0.772, "j": 0.153, "x": 0.150,
    "q": 0.095, "z": 0.074,
}
_MIN_FREQ = min(LETTER_FREQUENCIES.values())

QWERTY_ADJACENT = {
    "q": "wa", "w": "qeas", "e": "wrds", "r": "etdf", "t": "ryfg",
    "y": "tugh", "u": "yihj", "i": "uojk", "o": "ipkl", "p": "ol",
    "a": "qwsz", "s": "awedxz", "d": "serfcx", "f": "drtgvc", "g": "ftyhbv",
    "h": "gyujnb", "j": "huikmn", "k": "jiolm", "l": "kop",
    "z": "asx", "x": "zsdc", "c": "xdfv", "v": "cfgb", "b": "vghn",
    "n": "bhjm", "m": "njk",
}


class EditKind(str, Enum):
    TYPO_INSERT = "typo_insert"
    TYPO_DELETE = "typo_delete"
    TYPO_SUBSTITUTE = "typo_substitute"
    TYPO_TRANSPOSE = "typo_transpose"
    TYPO_MIXED = "typo_mixed"
    HOMOGLYPH = "homoglyph"
    FORMAT_ZWS = "format_zws"
    FORMAT_SHIFT = "format_shift"


TYPO_KINDS = (EditKind.TYPO_INSERT, EditKind.TYPO_DELETE,
              EditKind.TYPO_SUBSTITUTE, EditKind.TYPO_TRANSPOSE,
              EditKind.TYPO_MIXED)

# Mixed typo kinds are drawn from the observed keystroke-error distribution.
MIXED_KINDS = (EditKind.TYPO_SUBSTITUTE, EditKind.TYPO_INSERT,
               EditKind.TYPO_TRANSPOSE, EditKind.TYPO_DELETE)
MIXED_WEIGHTS = (0.556, 0.203, 0.011, 0.230)


@dataclass(frozen=True)
class EditAttackConfig:
    kind: EditKind
    per_word_probability: float
    seed: int = 0
    letter_frequency_weighting: bool = True

    def __post_init__(self):
        if not (0.0 <= self.per_word_probability <= 1.0):
            raise ValueError("per_word_probability must be in [0, 1]")


class HomoglyphTable:
    """ASCII letter -> visually confusable non-ASCII codepoint (one best
    alternative per letter). Injective, so the inverse substitution recovers
    the original text."""

    def __init__(self, mapping: dict[str, str]):
        for src, dst in mapping.items():
            if len(src) != 1 or len(dst) != 1:
                raise DataError(f"homoglyph entries must be single codepoints: "
                                f"{src!r} -> {dst!r}")
            if src == dst:
                raise DataError(f"homoglyph maps {src!r} to itself")
        if len(set(mapping.values())) != len(mapping):
            raise DataError("homoglyph mapping is not injective")
        self.mapping = dict(mapping)
        gaps = [c for c in "abcdefghijklmnopqrstuvwxyz"
                "ABCDEFGHIJKLMNOPQRSTUVWXYZ" if c not in self.mapping]
        if gaps:
            logger.warning("homoglyph table has no entry for: %s", "".join(gaps))

    @staticmethod
    def load(path: str | Path) -> "HomoglyphTable":
        mapping = {}
        with Path(path).open("r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.rstrip("\n")
                if not line or line.startswith("#"):
                    continue
                parts = line.split("\t")
                if len(parts) != 2:
                    raise DataError(f"{path}:{lineno}: expected 'src<TAB>dst'")
                mapping[parts[0]] = parts[1]
        return HomoglyphTable(mapping)

    @staticmethod
    def bundled() -> "HomoglyphTable":
        ref = resources.files("detstress").joinpath("data/homoglyphs.tsv")
        with resources.as_file(ref) as path:
            return HomoglyphTable.load(path)

    def inverse(self) -> "HomoglyphTable":
        return HomoglyphTable({v: k for k, v in self.mapping.items()})

    def substitute_all(self, text: str) -> str:
        return text.translate(str.maketrans(self.mapping))


def _position_weights(chars: list[str], weighted: bool) -> np.ndarray:
    if not weighted:
        return np.full(len(chars), 1.0 / len(chars))
    w = np.array([LETTER_FREQUENCIES.get(c.lower(), _MIN_FREQ) for c in chars])
    return w / w.sum()


def _pick_position(word: str, rng: np.random.Generator, weighted: bool,
                   positions: list[int] | None = None) -> int:
    positions = positions if positions is not None else list(range(len(word)))
    weights = _position_weights([word[i] for i in positions], weighted)
    return positions[int(rng.choice(len(positions), p=weights))]


def draw_mixed_kind(rng: np.random.Generator) -> EditKind:
    return MIXED_KINDS[int(rng.choice(len(MIXED_KINDS), p=MIXED_WEIGHTS))]


def _adjacent_char(ch: str, rng: np.random.Generator) -> str:
    adj = QWERTY_ADJACENT.get(ch.lower())
    if not adj:
        return ch  # no keyboard neighbor: duplicate the character
    return adj[int(rng.integers(len(adj)))]


def _typo_word(word: str, kind: EditKind, rng: np.random.Generator,
               weighted: bool) -> str | None:
    """One typo of the given kind, or None when the word cannot take it."""
    if kind is EditKind.TYPO_MIXED:
        kind = draw_mixed_kind(rng)
        while kind is EditKind.TYPO_TRANSPOSE and len(word) < 2:
            kind = draw_mixed_kind(rng)
    if kind is EditKind.TYPO_TRANSPOSE:
        if len(word) < 2:
            return None
        pos = _pick_position(word, rng, weighted,
                             positions=list(range(len(word) - 1)))
        return word[:pos] + word[pos + 1] + word[pos] + word[pos + 2:]
    pos = _pick_position(word, rng, weighted)
    if kind is EditKind.TYPO_INSERT:
        return word[:pos + 1] + _adjacent_char(word[pos], rng) + word[pos + 1:]
    if kind is EditKind.TYPO_DELETE:
        return word[:pos] + word[pos + 1:]
    if kind is EditKind.TYPO_SUBSTITUTE:
        return word[:pos] + _adjacent_char(word[pos], rng) + word[pos + 1:]
    raise ValueError(f"not a typo kind: {kind}")


def apply_typo_attack(text: str, config: EditAttackConfig) -> tuple[str, int]:
    """Insert/delete/substitute/transpose one character in each selected word.
    Returns the attacked text and the number of edited words."""
    if config.kind not in TYPO_KINDS:
        raise ValueError(f"{config.kind} is not a typo kind")
    rng = rng_from("edit-typo", config.seed)
    chunks = split_preserving_ws(text)
    edits = 0
    for i, chunk in enumerate(chunks):
        if chunk.isspace():
            continue
        if rng.random() >= config.per_word_probability:
            continue
        edited = _typo_word(chunk, config.kind, rng,
                            config.letter_frequency_weighting)
        if edited is None:
            continue  # pure transposition on a 1-char word: skip
        chunks[i] = edited
        edits += 1
    return "".join(chunks), edits


def apply_homoglyph_attack(text: str, config: EditAttackConfig,
                           table: HomoglyphTable | None = None
                           ) -> tuple[str, int]:
    """Replace one character of each selected word with its confusable
    alternative; codepoint count is unchanged."""
    if config.kind is not EditKind.HOMOGLYPH:
        raise ValueError(f"{config.kind} is not the homoglyph kind")
    table = table or HomoglyphTable.bundled()
    rng = rng_from("edit-homoglyph", config.seed)
    chunks = split_preserving_ws(text)
    alterations = 0
    for i, chunk in enumerate(chunks):
        if chunk.isspace():
            continue
        if rng.random() >= config.per_word_probability:
            continue
        mappable = [j for j, ch in enumerate(chunk) if ch in table.mapping]
        if not mappable:
            logger.debug("homoglyph: no mappable character in %r", chunk)
            continue
        pos = _pick_position(chunk, rng, config.letter_frequency_weighting,
                             positions=mappable)
        chunks[i] = chunk[:pos] + table.mapping[chunk[pos]] + chunk[pos + 1:]
        alterations += 1
    return "".join(chunks), alterations


def apply_format_attack(text: str, config: EditAttackConfig) -> tuple[str, int]:
    """format_zws inserts U+200B at inter-token boundaries at rate p;
    format_shift appends one shift character after sentence-final tokens."""
    if config.kind not in (EditKind.FORMAT_ZWS, EditKind.FORMAT_SHIFT):
        raise ValueError(f"{config.kind} is not a format kind")
    rng = rng_from("edit-format", config.seed)
    chunks = split_preserving_ws(text)
    insertions = 0
    if config.kind is EditKind.FORMAT_ZWS:
        for i, chunk in enumerate(chunks):
            if not chunk.isspace():
                continue
            if rng.random() < config.per_word_probability:
                chunks[i] = chunk + ZWS  # lands between tokens
                insertions += 1
    else:
        for i, chunk in enumerate(chunks):
            if chunk.isspace() or not is_sentence_end(chunk):
                continue
            if rng.random() < config.per_word_probability:
                chunks[i] = chunk + SHIFT_CHARS[int(rng.integers(len(SHIFT_CHARS)))]
                insertions += 1
    return "".join(chunks), insertions


def apply_exact_typos(text: str, n_edits: int, seed: int = 0,
                      kind: EditKind = EditKind.TYPO_MIXED,
                      letter_frequency_weighting: bool = True
                      ) -> tuple[str, int]:
    """Edit exactly n_edits distinct words (fewer only if the text is too
    short); the budget-targeted variant of apply_typo_attack."""
    if kind not in TYPO_KINDS:
        raise ValueError(f"{kind} is not a typo kind")
    rng = rng_from("edit-exact", seed)
    chunks = split_preserving_ws(text)
    word_idx = [i for i, c in enumerate(chunks) if not c.isspace()]
    order = rng.permutation(len(word_idx))
    edits = 0
    for oi in order:
        if edits == n_edits:
            break
        i = word_idx[int(oi)]
        edited = _typo_word(chunks[i], kind, rng, letter_frequency_weighting)
        if edited is None:
            continue
        chunks[i] = edited
        edits += 1
    return "".join(chunks), edits


def strip_zws(text: str) -> str:
    return text.replace(ZWS, "")


def apply_edit_attack(text: str, config: EditAttackConfig,
                      table: HomoglyphTable | None = None) -> tuple[str, int]:
    """Dispatch on config.kind; the uniform entry point used by the runner."""
    if config.kind in TYPO_KINDS:
        return apply_typo_attack(text, config)
    if config.kind is EditKind.HOMOGLYPH:
        return apply_homoglyph_attack(text, config, table)
    return apply_format_attack(text, config)
