"""Corpora of paired human-written / machine-generated texts.

Datasets are JSONL files, one record per line with fields
{id, text, label, generator_tag, prompt}. Text is stored as an exact
codepoint sequence (no Unicode normalization) because several attacks embed
zero-width and control codepoints that must survive persistence bit-exactly.

Also houses the deterministic synthetic "human" corpus generator used for
desk-scale verification: a seeded template grammar over the word pools in
``_vocab``, heavy-tailed enough that an n-gram model trained on it does not
memorize it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from . import _vocab
from .errors import DataError
from .util import derive_seed, rng_from, tokenize

PROMPT_TOKENS_DEFAULT = 20
REPETITION_NGRAM_DEFAULT = 4
REPETITION_GATE = 0.2

# default split sizes when synthesizing a full corpus
SPLIT_SIZES = {"train": 8000, "eval": 1000, "test": 1000}

_RECORD_FIELDS = ("id", "text", "label", "generator_tag", "prompt")


class Label(str, Enum):
    HWT = "HWT"
    MGT = "MGT"


class Split(str, Enum):
    TRAIN = "train"
    EVAL = "eval"
    TEST = "test"


@dataclass(frozen=True)
class Document:
    """One text sample with provenance label."""

    id: str
    text: str
    label: Label
    generator_tag: str = ""
    prompt: str = ""

    def __post_init__(self):
        if not self.text.strip():
            raise DataError(f"document {self.id!r}: text is empty")
        if not isinstance(self.label, Label):
            raise DataError(f"document {self.id!r}: bad label {self.label!r}")


@dataclass(frozen=True)
class Dataset:
    split: Split
    documents: tuple[Document, ...]

    def __post_init__(self):
        seen: set[str] = set()
        for doc in self.documents:
            if doc.id in seen:
                raise DataError(f"duplicate document id {doc.id!r}")
            seen.add(doc.id)

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self) -> Iterator[Document]:
        return iter(self.documents)

    def hwt(self) -> list[Document]:
        return [d for d in self.documents if d.label is Label.HWT]

    def mgt(self) -> list[Document]:
        return [d for d in self.documents if d.label is Label.MGT]

    def label_counts(self) -> tuple[int, int]:
        hwt = sum(1 for d in self.documents if d.label is Label.HWT)
        return hwt, len(self.documents) - hwt

    @property
    def balanced(self) -> bool:
        hwt, mgt = self.label_counts()
        return hwt == mgt


@dataclass(frozen=True)
class DerivedPrompt:
    source_id: str
    text: str
    truncated: bool = False  # True when the source was shorter than requested


def load_dataset(path: str | Path, expected_split: Split | str,
                 require_balanced: bool = False) -> Dataset:
    """Load and validate a JSONL dataset, preserving input order."""
    split = Split(expected_split)
    path = Path(path)
    if not path.exists():
        raise DataError(f"dataset file not found: {path}")
    documents: list[Document] = []
    seen: set[str] = set()
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DataError(f"{path}:{lineno}: malformed record: {exc}") from exc
            if not isinstance(rec, dict):
                raise DataError(f"{path}:{lineno}: record is not an object")
            missing = [f for f in ("id", "text", "label") if f not in rec]
            if missing:
                raise DataError(f"{path}:{lineno}: missing fields {missing}")
            try:
                label = Label(rec["label"])
            except ValueError:
                raise DataError(
                    f"{path}:{lineno}: unknown label {rec['label']!r}") from None
            if rec["id"] in seen:
                raise DataError(f"{path}:{lineno}: duplicate id {rec['id']!r}")
            seen.add(rec["id"])
            try:
                doc = Document(
                    id=str(rec["id"]),
                    text=rec["text"],
                    label=label,
                    generator_tag=str(rec.get("generator_tag", "")),
                    prompt=str(rec.get("prompt", "")),
                )
            except DataError as exc:
                raise DataError(f"{path}:{lineno}: {exc}") from exc
            documents.append(doc)
    ds = Dataset(split=split, documents=tuple(documents))
    if require_balanced and not ds.balanced:
        hwt, mgt = ds.label_counts()
        raise DataError(f"{path}: unbalanced labels (HWT={hwt}, MGT={mgt})")
    return ds


def save_dataset(dataset: Dataset, path: str | Path) -> None:
    """Persist as JSONL; text round-trips codepoint-exact (incl. \\u200B etc.)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        for doc in dataset:
            rec = {
                "id": doc.id,
                "text": doc.text,
                "label": doc.label.value,
                "generator_tag": doc.generator_tag,
                "prompt": doc.prompt,
            }
            fh.write(json.dumps(rec, ensure_ascii=False) + "\n")


def derive_prompts(dataset: Dataset,
                   n_tokens: int = PROMPT_TOKENS_DEFAULT) -> list[DerivedPrompt]:
    """One prompt per HWT document: its first n_tokens whitespace tokens,
    rejoined with single spaces. Shorter documents yield the whole text,
    flagged as truncated."""
    if n_tokens < 1:
        raise ValueError("n_tokens must be >= 1")
    hwt_docs = dataset.hwt()
    if not hwt_docs:
        raise DataError("dataset contains no HWT documents to derive prompts from")
    prompts = []
    for doc in hwt_docs:
        tokens = tokenize(doc.text)
        if len(tokens) < n_tokens:
            prompts.append(DerivedPrompt(doc.id, " ".join(tokens), truncated=True))
        else:
            prompts.append(DerivedPrompt(doc.id, " ".join(tokens[:n_tokens])))
    return prompts


def repetition_score(text: str, n: int = REPETITION_NGRAM_DEFAULT) -> float:
    """Fraction of n-grams that repeat an earlier identical n-gram.

    0.0 for texts with fewer than n tokens; equals 0 iff all n-grams are
    distinct. Generated corpora are expected to stay below REPETITION_GATE
    at n=4.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    tokens = tokenize(text)
    total = len(tokens) - n + 1
    if total <= 0:
        return 0.0
    seen: set[tuple[str, ...]] = set()
    dup = 0
    for i in range(total):
        gram = tuple(tokens[i:i + n])
        if gram in seen:
            dup += 1
        else:
            seen.add(gram)
    return dup / total


# ---------------------------------------------------------------------------
# Synthetic human-written corpus
# ---------------------------------------------------------------------------

def _flatten(groups: list[list[str]]) -> list[str]:
    return [w for g in groups for w in g]


class _Pool:
    """A pool sampled with a heavy-tailed (Zipf-like) distribution."""

    def __init__(self, items: list, exponent: float = 0.9):
        self.items = list(items)
        ranks = np.arange(2, len(self.items) + 2, dtype=np.float64)
        w = ranks ** -exponent
        self.p = w / w.sum()

    def draw(self, rng: np.random.Generator):
        return self.items[int(rng.choice(len(self.items), p=self.p))]


def _collocation_pool(rng: np.random.Generator, left: list[str],
                      right: list[str], size: int,
                      exponent: float = 1.0) -> _Pool:
    """Fixed table of (left, right) word pairings. Sentences reuse these
    pairings, which is what gives held-out text mostly-seen trigrams while
    the tail of the pool stays rare."""
    lp = _Pool(left, exponent=0.9)
    rp = _Pool(right, exponent=0.9)
    pairs: list[tuple[str, str]] = []
    seen = set()
    while len(pairs) < size:
        pair = (lp.draw(rng), rp.draw(rng))
        if pair not in seen:
            seen.add(pair)
            pairs.append(pair)
    return _Pool(pairs, exponent=exponent)


class _TextGrammar:
    """Seeded collocation grammar producing English-like narrative.

    The collocation tables are built once from a fixed seed and are part of
    the corpus definition; per-document randomness only selects among them.
    """

    def __init__(self):
        rng = rng_from("grammar-tables", 7)
        adj = _flatten(_vocab.ADJ_GROUPS)
        noun = _flatten(_vocab.NOUN_GROUPS)
        vpast = _flatten(_vocab.VPAST_GROUPS)
        self.np = _collocation_pool(rng, adj, noun, 420)       # adj + noun
        self.vp = _collocation_pool(rng, vpast, _vocab.ADV_LIST, 320)
        self.nv = _collocation_pool(rng, noun, vpast, 420)     # noun + verb
        self.noun = _Pool(noun, exponent=1.1)
        self.adj = _Pool(adj, exponent=1.1)
        self.name = _Pool(_vocab.NAME_LIST, exponent=0.6)
        self.time = _Pool(_vocab.TIME_LIST, exponent=0.5)
        self.prep = _Pool(_vocab.PREP_LIST, exponent=0.5)
        self.conn = _Pool(_vocab.CONNECTIVES, exponent=0.5)

    def sentence(self, rng: np.random.Generator) -> str:
        np_ = " ".join(self.np.draw(rng))
        vp = " ".join(self.vp.draw(rng))
        nv = " ".join(self.nv.draw(rng))
        templates = [
            lambda: f"The {np_} {vp}.",
            lambda: f"The {nv} {self.prep.draw(rng)} the {np_}.",
            lambda: f"The {nv} the {np_}.",
            lambda: f"{self.name.draw(rng)} {vp} {self.prep.draw(rng)} the {np_}.",
            lambda: f"In the {self.time.draw(rng)} the {nv} {self.prep.draw(rng)} the {self.noun.draw(rng)}.",
            lambda: f"The {np_} {vp} {self.conn.draw(rng)} the {nv}.",
            lambda: f"{self.name.draw(rng)} and {self.name.draw(rng)} saw the {np_}.",
            lambda: f"Every {self.noun.draw(rng)} in the {self.noun.draw(rng)} {vp}.",
            lambda: f"After the {self.time.draw(rng)} the {nv} again.",
            lambda: f"Was the {np_} really so {self.adj.draw(rng)}?",
            lambda: f"What a {np_} it was!",
            lambda: f"No {self.noun.draw(rng)} ever {vp}!",
            lambda: f"Soon the {nv} and the {np_} {vp}.",
        ]
        weights = np.array(
            [16, 13, 12, 11, 9, 8, 7, 6, 5, 3, 2, 2, 6], dtype=np.float64)
        weights /= weights.sum()
        idx = int(rng.choice(len(templates), p=weights))
        return templates[idx]()

    def document(self, rng: np.random.Generator,
                 min_sentences: int = 10, max_sentences: int = 16) -> str:
        n_sent = int(rng.integers(min_sentences, max_sentences + 1))
        return " ".join(self.sentence(rng) for _ in range(n_sent))


def synthesize_hwt(n_docs: int, seed: int, split: Split | str = Split.TRAIN,
                   id_prefix: str = "hwt") -> Dataset:
    """Deterministically synthesize a human-written-style corpus."""
    split = Split(split)
    grammar = _TextGrammar()
    docs = []
    for i in range(n_docs):
        rng = rng_from("synth-hwt", seed, i)
        text = grammar.document(rng)
        docs.append(Document(
            id=f"{id_prefix}-{split.value}-{i:05d}",
            text=text,
            label=Label.HWT,
            generator_tag="human",
        ))
    return Dataset(split=split, documents=tuple(docs))


def synthesize_default_splits(seed: int,
                              sizes: dict[str, int] | None = None
                              ) -> dict[Split, Dataset]:
    """Train/eval/test HWT corpora at the default 8000/1000/1000 sizes
    (override for desk-scale work). Each split uses an independent stream."""
    sizes = sizes or SPLIT_SIZES
    out = {}
    for split_name, n in sizes.items():
        split = Split(split_name)
        out[split] = synthesize_hwt(n, seed=derive_seed(seed, split_name),
                                    split=split)
    return out
