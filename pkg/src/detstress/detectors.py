"""Metric-based detectors over next-token statistics, plus DetectGPT with the
low-probability anomaly-filtering patch and an external-score ingestion path.

Every detector emits machine-positive polarity: higher score means more
machine-like. That keeps the evaluation layer detector-agnostic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .attacks.para import choose_spans
from .errors import DataError
from .toylm import NGramModel, TokenScore
from .util import rng_from
from .watermark import WatermarkConfig, Watermarker, wm_detect

DEFAULT_PATCH_K = 0.05


@dataclass(frozen=True)
class DetectionScore:
    detector: str
    doc_id: str
    score: float


@dataclass(frozen=True)
class DetectGptConfig:
    n_perturbations: int = 10
    mode: str = "d"  # "d": raw likelihood drop; "z": drop / perturbed stdev
    mask_ratio: float = 0.15
    span_len: int = 2
    seed: int = 0

    def __post_init__(self):
        if self.n_perturbations < 1:
            raise ValueError("n_perturbations must be >= 1")
        if self.mode not in ("d", "z"):
            raise ValueError("mode must be 'd' or 'z'")
        if self.mode == "z" and self.n_perturbations < 2:
            raise ValueError("z mode needs at least 2 perturbations")

    @property
    def name(self) -> str:
        return f"detectgpt-{self.n_perturbations}{self.mode}"


@dataclass(frozen=True)
class PatchConfig:
    k_percent: float = DEFAULT_PATCH_K

    def __post_init__(self):
        if not (0.0 <= self.k_percent <= 0.5):
            raise ValueError("k_percent must be in [0, 0.5]")


# ---------------------------------------------------------------------------
# Aggregations over token scores
# ---------------------------------------------------------------------------

def _require(scores: Sequence[TokenScore]) -> None:
    if not scores:
        raise DataError("detector needs a non-empty score sequence")


def gltr(scores: Sequence[TokenScore]) -> float:
    """Mean per-token log-probability; machine text averages high."""
    _require(scores)
    return float(np.mean([s.logprob for s in scores]))


def rank_detector(scores: Sequence[TokenScore]) -> float:
    """Negated mean rank (low rank = machine-like = high score)."""
    _require(scores)
    return -float(np.mean([s.rank for s in scores]))


def logrank_detector(scores: Sequence[TokenScore]) -> float:
    _require(scores)
    return -float(np.mean([math.log(s.rank) for s in scores]))


def entropy_detector(scores: Sequence[TokenScore]) -> float:
    """Negated mean next-token entropy (machine text sits in low-entropy
    contexts)."""
    _require(scores)
    return -float(np.mean([s.entropy for s in scores]))


# ---------------------------------------------------------------------------
# DetectGPT
# ---------------------------------------------------------------------------

def _mean_logprob(scores: Sequence[TokenScore],
                  excluded: frozenset[int]) -> float:
    kept = [s.logprob for i, s in enumerate(scores) if i not in excluded]
    if not kept:
        raise DataError("no scoreable tokens after patch exclusion")
    return float(np.mean(kept))


def likelihood_drop(logp_x: float, perturbed_logps: Sequence[float],
                    mode: str) -> float:
    """d = logp(x) - mean(perturbed); z additionally divides by the sample
    stdev of the perturbed log-probs (floored at 1e-6)."""
    d = logp_x - float(np.mean(perturbed_logps))
    if mode == "d":
        return d
    std = float(np.std(perturbed_logps, ddof=1))
    return d / max(std, 1e-6)


def detect_gpt(text: str, model: NGramModel, config: DetectGptConfig,
               patch: PatchConfig | None = None) -> float:
    """Likelihood-drop score under mask-fill perturbation.

    With the patch, the bottom k% lowest-probability tokens are excluded both
    from mask eligibility and from every log-probability average; k=0 is
    bit-identical to no patch.
    """
    base_scores = model.score(text)
    if not base_scores:
        raise DataError("text too short for DetectGPT")
    n_ctx = model.order - 1  # leading tokens carry no score

    excluded_scored: frozenset[int] = frozenset()
    excluded_tokens: frozenset[int] = frozenset()
    if patch is not None and patch.k_percent > 0:
        k = int(len(base_scores) * patch.k_percent)
        if k:
            by_prob = sorted(range(len(base_scores)),
                             key=lambda i: (base_scores[i].logprob, i))
            excluded_scored = frozenset(by_prob[:k])
            excluded_tokens = frozenset(i + n_ctx for i in excluded_scored)

    logp_x = _mean_logprob(base_scores, excluded_scored)
    n_tokens = len(base_scores) + n_ctx

    perturbed_logps = []
    for i in range(config.n_perturbations):
        rng = rng_from("detectgpt-spans", config.seed, i)
        spans = _choose_spans_avoiding(n_tokens, config.mask_ratio,
                                       config.span_len, rng, excluded_tokens)
        if not spans and config.mask_ratio > 0:
            raise DataError("text too short to mask a span at this ratio")
        filled = model.mask_fill(text, spans,
                                 seed=(config.seed * 1000003 + i))
        perturbed_logps.append(
            _mean_logprob(model.score(filled), excluded_scored))

    return likelihood_drop(logp_x, perturbed_logps, config.mode)


def _choose_spans_avoiding(n_tokens: int, rate: float, span_len: int,
                           rng: np.random.Generator,
                           excluded: frozenset[int]) -> list[tuple[int, int]]:
    """choose_spans, but spans never cover an excluded token position.
    With nothing excluded this consumes the RNG identically to choose_spans."""
    if not excluded:
        return choose_spans(n_tokens, rate, span_len, rng)
    spans = []
    taken = np.zeros(n_tokens, dtype=bool)
    for i in sorted(excluded):
        taken[i] = True
    n_spans = int(round(rate * n_tokens / span_len))
    n_spans = min(n_spans, n_tokens // span_len)
    starts = np.arange(0, n_tokens - span_len + 1)
    order = rng.permutation(len(starts))
    for idx in order:
        s = int(starts[idx])
        if taken[s:s + span_len].any():
            continue
        spans.append(s)
        taken[s:s + span_len] = True
        if len(spans) == n_spans:
            break
    return sorted((s, s + span_len) for s in spans)


# ---------------------------------------------------------------------------
# External score ingestion
# ---------------------------------------------------------------------------

POLARITIES = ("machine_positive", "machine_negative")


def ingest_external_scores(path: str | Path,
                           known_ids: set[str] | None = None
                           ) -> tuple[str, list[DetectionScore]]:
    """Read scores exported by another tool: a header line
    'detector_name<TAB>polarity' then 'doc_id<TAB>score' lines. Scores are
    normalized to machine-positive polarity on ingestion."""
    path = Path(path)
    with path.open("r", encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        if not header:
            return "", []
        parts = header.split("\t")
        if len(parts) != 2 or parts[1] not in POLARITIES:
            raise DataError(
                f"{path}:1: header must be 'detector_name<TAB>polarity' with "
                f"polarity in {POLARITIES}")
        name, polarity = parts
        sign = 1.0 if polarity == "machine_positive" else -1.0
        scores = []
        for lineno, line in enumerate(fh, start=2):
            line = line.rstrip("\n")
            if not line:
                continue
            fields = line.split("\t")
            if len(fields) != 2:
                raise DataError(f"{path}:{lineno}: expected 'doc_id<TAB>score'")
            doc_id, raw = fields
            if known_ids is not None and doc_id not in known_ids:
                raise DataError(f"{path}:{lineno}: unknown document id "
                                f"{doc_id!r}")
            try:
                value = float(raw)
            except ValueError:
                raise DataError(f"{path}:{lineno}: bad score {raw!r}") from None
            scores.append(DetectionScore(detector=name, doc_id=doc_id,
                                         score=sign * value))
    return name, scores


def write_scores(path: str | Path, detector: str,
                 scores: Sequence[DetectionScore],
                 polarity: str = "machine_positive") -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"{detector}\t{polarity}\n")
        for s in scores:
            fh.write(f"{s.doc_id}\t{s.score!r}\n")


# ---------------------------------------------------------------------------
# Runner adapters
# ---------------------------------------------------------------------------

class Detector:
    name: str

    def score_text(self, text: str) -> float:
        raise NotImplementedError


class MetricDetector(Detector):
    """gltr / rank / logrank / entropy over any backend's token scores."""

    AGGREGATIONS = {
        "gltr": gltr,
        "rank": rank_detector,
        "logrank": logrank_detector,
        "entropy": entropy_detector,
    }

    def __init__(self, name: str, backend):
        if name not in self.AGGREGATIONS:
            raise ValueError(f"unknown metric detector {name!r}")
        self.name = name
        self.backend = backend
        self._agg = self.AGGREGATIONS[name]

    def score_text(self, text: str) -> float:
        return self._agg(self.backend.score(text))


class DetectGptDetector(Detector):
    def __init__(self, model: NGramModel, config: DetectGptConfig,
                 patch: PatchConfig | None = None):
        self.model = model
        self.config = config
        self.patch = patch
        self.name = config.name + ("-patched" if patch else "")

    def score_text(self, text: str) -> float:
        return detect_gpt(text, self.model, self.config, self.patch)


class WatermarkDetector(Detector):
    name = "watermark"

    def __init__(self, config: WatermarkConfig, vocab: Sequence[str]):
        self.config = config
        self.vocab = list(vocab)

    def score_text(self, text: str) -> float:
        return wm_detect(text, self.config, self.vocab).z


def metric_detectors(backend, names: Sequence[str] = ("gltr", "rank",
                                                      "logrank", "entropy")
                     ) -> list[Detector]:
    return [MetricDetector(n, backend) for n in names]
