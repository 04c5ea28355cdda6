"""Threshold-free detection metrics, budget sweeps, and the leaderboard.

AUC is the Mann-Whitney pair statistic (ties count 0.5); TPR@FPR picks the
smallest threshold whose false-positive rate meets the target, with no
interpolation. Attacked metrics are reported relative to the unattacked
baseline (percentage), which is the leaderboard's unit.
"""

from __future__ import annotations

import csv
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import budget as budget_mod
from .corpus import Dataset, Document
from .errors import DataError
from .util import derive_seed

TPR_FPR_TARGETS = (0.05, 0.10, 0.20)

CATEGORIES = ("Edit", "Para.", "Prompt", "CoGen.")


# ---------------------------------------------------------------------------
# Metrics
# ---------------------------------------------------------------------------

def roc_auc(pos_scores: Sequence[float], neg_scores: Sequence[float]) -> float:
    """Fraction of (pos, neg) pairs with pos > neg; ties count 0.5."""
    pos = np.asarray(pos_scores, dtype=np.float64)
    neg = np.asarray(neg_scores, dtype=np.float64)
    if len(pos) == 0 or len(neg) == 0:
        raise DataError("roc_auc requires non-empty score collections")
    scores = np.concatenate([pos, neg])
    uniq, inv, cnts = np.unique(scores, return_inverse=True, return_counts=True)
    starts = np.concatenate([[0], np.cumsum(cnts)[:-1]])
    avg_ranks = starts + (cnts + 1) / 2.0
    ranks = avg_ranks[inv]
    u = ranks[:len(pos)].sum() - len(pos) * (len(pos) + 1) / 2.0
    return float(u / (len(pos) * len(neg)))


def roc_curve(pos_scores: Sequence[float],
              neg_scores: Sequence[float]) -> tuple[np.ndarray, np.ndarray]:
    """Enumerated ROC points (FPR, TPR) from threshold +inf down to -inf."""
    pos = np.sort(np.asarray(pos_scores, dtype=np.float64))
    neg = np.sort(np.asarray(neg_scores, dtype=np.float64))
    thresholds = np.unique(np.concatenate([pos, neg]))[::-1]
    fpr = [0.0]
    tpr = [0.0]
    for t in thresholds:
        fpr.append((len(neg) - np.searchsorted(neg, t, side="left")) / len(neg))
        tpr.append((len(pos) - np.searchsorted(pos, t, side="left")) / len(pos))
    return np.array(fpr), np.array(tpr)


def roc_auc_trapezoid(pos_scores: Sequence[float],
                      neg_scores: Sequence[float]) -> float:
    """Trapezoidal area under the enumerated ROC curve (internal cross-check
    for the pairwise formulation; the two must agree to 1e-12)."""
    fpr, tpr = roc_curve(pos_scores, neg_scores)
    trapezoid = getattr(np, "trapezoid", np.trapz)
    return float(trapezoid(tpr, fpr))


def tpr_at_fpr(pos_scores: Sequence[float], neg_scores: Sequence[float],
               fpr_target: float) -> float:
    """TPR at the smallest threshold t with FPR(t) <= target (score >= t is
    classified MGT); no interpolation."""
    if not (0 < fpr_target < 1):
        raise ValueError("fpr_target must be in (0, 1)")
    pos = np.sort(np.asarray(pos_scores, dtype=np.float64))
    neg = np.sort(np.asarray(neg_scores, dtype=np.float64))
    if len(pos) == 0 or len(neg) == 0:
        raise DataError("tpr_at_fpr requires non-empty score collections")
    uniq = np.unique(np.concatenate([pos, neg]))
    n_neg, n_pos = len(neg), len(pos)
    # candidate thresholds in ascending order: each unique score value u
    # (classifying >= u) followed by "just above u" (classifying > u)
    fpr_at = (n_neg - np.searchsorted(neg, uniq, side="left")) / n_neg
    fpr_above = (n_neg - np.searchsorted(neg, uniq, side="right")) / n_neg
    tpr_at_ = (n_pos - np.searchsorted(pos, uniq, side="left")) / n_pos
    tpr_above = (n_pos - np.searchsorted(pos, uniq, side="right")) / n_pos
    fprs = np.empty(2 * len(uniq))
    tprs = np.empty(2 * len(uniq))
    fprs[0::2], fprs[1::2] = fpr_at, fpr_above
    tprs[0::2], tprs[1::2] = tpr_at_, tpr_above
    ok = fprs <= fpr_target
    idx = int(np.argmax(ok))  # fprs are non-increasing, so first True
    return float(tprs[idx])


@dataclass(frozen=True)
class EvalResult:
    auc_roc: float
    tpr_at_fpr: dict[float, float]
    n_pos: int
    n_neg: int
    accuracy_at_threshold: float | None = None


def evaluate_scores(pos_scores: Sequence[float], neg_scores: Sequence[float],
                    fpr_targets: Sequence[float] = TPR_FPR_TARGETS,
                    threshold: float | None = None) -> EvalResult:
    acc = None
    if threshold is not None:
        pos = np.asarray(pos_scores, dtype=np.float64)
        neg = np.asarray(neg_scores, dtype=np.float64)
        correct = np.sum(pos >= threshold) + np.sum(neg < threshold)
        acc = float(correct / (len(pos) + len(neg)))
    return EvalResult(
        auc_roc=roc_auc(pos_scores, neg_scores),
        tpr_at_fpr={t: tpr_at_fpr(pos_scores, neg_scores, t) for t in fpr_targets},
        n_pos=len(pos_scores),
        n_neg=len(neg_scores),
        accuracy_at_threshold=acc,
    )


# ---------------------------------------------------------------------------
# Sweep
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AttackLevel:
    """One budget level of an attack: a label plus a document transform."""
    label: str
    apply: Callable[[Document, int], str]  # (doc, seed) -> attacked text


@dataclass(frozen=True)
class AttackSpec:
    name: str
    category: str  # one of CATEGORIES
    levels: tuple[AttackLevel, ...]

    def __post_init__(self):
        if self.category not in CATEGORIES:
            raise ValueError(f"unknown attack category {self.category!r}")


@dataclass(frozen=True)
class BudgetStats:
    mean_edit_distance: float
    median_edit_distance: float
    mean_jaro: float
    mean_ngram_cosine: float
    mean_perplexity: float | None = None


@dataclass(frozen=True)
class SweepCell:
    detector: str
    attack: str
    category: str
    budget_level: str
    budget_stats: BudgetStats
    result: EvalResult
    relative_auc: float  # 100 * attacked / unattacked
    incomplete: bool = False
    error: str = ""


def _score_texts(detector, texts: Sequence[str], workers: int) -> list[float]:
    if workers <= 1:
        return [detector.score_text(t) for t in texts]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(detector.score_text, texts))


def run_sweep(dataset: Dataset, attacks: Sequence[AttackSpec], detectors,
              seed: int = 0,
              accounting: budget_mod.Accounting | str = "codepoint",
              workers: int = 1, budget_backend=None
              ) -> tuple[dict[str, EvalResult], list[SweepCell]]:
    """Attack every MGT document at every budget level, score every detector
    on attacked MGT vs untouched HWT, and emit one cell per combination.

    Fully deterministic given the seed: per-document randomness derives from
    (seed, attack, level, doc id), so results are independent of `workers`.
    """
    hwt_docs = dataset.hwt()
    mgt_docs = dataset.mgt()
    if not hwt_docs or not mgt_docs:
        raise DataError("sweep needs both HWT and MGT documents")

    hwt_texts = [d.text for d in hwt_docs]
    mgt_texts = [d.text for d in mgt_docs]
    baselines: dict[str, EvalResult] = {}
    neg_scores: dict[str, list[float]] = {}
    for det in detectors:
        neg = _score_texts(det, hwt_texts, workers)
        pos = _score_texts(det, mgt_texts, workers)
        neg_scores[det.name] = neg
        baselines[det.name] = evaluate_scores(pos, neg)

    cells: list[SweepCell] = []
    for attack in attacks:
        for level in attack.levels:
            try:
                attacked = _apply_level(attack, level, mgt_docs, seed, workers)
            except Exception as exc:  # a failing backend must not kill the sweep
                for det in detectors:
                    cells.append(SweepCell(
                        detector=det.name, attack=attack.name,
                        category=attack.category, budget_level=level.label,
                        budget_stats=BudgetStats(0.0, 0.0, 0.0, 0.0),
                        result=EvalResult(float("nan"), {}, 0, 0),
                        relative_auc=float("nan"), incomplete=True,
                        error=str(exc)))
                continue
            reports = [budget_mod.measure(orig, att, accounting, budget_backend)
                       for orig, att in zip(mgt_texts, attacked)]
            ppls = [r.perplexity for r in reports if r.perplexity is not None]
            stats = BudgetStats(
                mean_edit_distance=float(np.mean([r.edit_distance for r in reports])),
                median_edit_distance=float(statistics.median(
                    r.edit_distance for r in reports)),
                mean_jaro=float(np.mean([r.jaro for r in reports])),
                mean_ngram_cosine=float(np.mean([r.ngram_cosine for r in reports])),
                mean_perplexity=float(np.mean(ppls)) if ppls else None,
            )
            for det in detectors:
                pos = _score_texts(det, attacked, workers)
                result = evaluate_scores(pos, neg_scores[det.name])
                base = baselines[det.name].auc_roc
                rel = 100.0 * result.auc_roc / base if base > 0 else float("nan")
                cells.append(SweepCell(
                    detector=det.name, attack=attack.name,
                    category=attack.category, budget_level=level.label,
                    budget_stats=stats, result=result, relative_auc=rel))
    return baselines, cells


def _apply_level(attack: AttackSpec, level: AttackLevel,
                 docs: Sequence[Document], seed: int,
                 workers: int) -> list[str]:
    def one(doc: Document) -> str:
        return level.apply(doc, derive_seed(seed, attack.name, level.label, doc.id))
    if workers <= 1:
        return [one(d) for d in docs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, docs))


# ---------------------------------------------------------------------------
# Leaderboard
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LeaderboardRow:
    detector: str
    category_means: dict[str, float | None]  # None renders as "- -"
    overall: float


def build_leaderboard(cells: Sequence[SweepCell]) -> list[LeaderboardRow]:
    """Per-detector unweighted category means of relative AUC, overall mean of
    available categories, ranked descending (name breaks ties)."""
    by_detector: dict[str, dict[str, list[float]]] = {}
    for cell in cells:
        if cell.incomplete or not np.isfinite(cell.relative_auc):
            continue
        by_detector.setdefault(cell.detector, {}).setdefault(
            cell.category, []).append(cell.relative_auc)
    rows = []
    for det, cats in by_detector.items():
        means: dict[str, float | None] = {}
        for cat in CATEGORIES:
            vals = cats.get(cat)
            means[cat] = float(np.mean(vals)) if vals else None
        available = [v for v in means.values() if v is not None]
        if not available:
            continue
        rows.append(LeaderboardRow(
            detector=det, category_means=means,
            overall=float(np.mean(available))))
    rows.sort(key=lambda r: (-r.overall, r.detector))
    return rows


# ---------------------------------------------------------------------------
# Report files
# ---------------------------------------------------------------------------

CELL_HEADER = [
    "detector", "attack", "category", "budget_level", "auc_roc",
    "relative_auc", "tpr_at_fpr_5", "tpr_at_fpr_10", "tpr_at_fpr_20",
    "n_pos", "n_neg", "mean_edit_distance", "median_edit_distance",
    "mean_jaro", "mean_ngram_cosine", "mean_perplexity", "incomplete", "error",
]


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return f"{x:.6f}"
    return str(x)


def write_cells_csv(path: str | Path, baselines: dict[str, EvalResult],
                    cells: Sequence[SweepCell],
                    header_note: str = "level means are unweighted") -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as fh:
        fh.write(f"# detstress sweep; {header_note}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CELL_HEADER)
        for det in sorted(baselines):
            base = baselines[det]
            writer.writerow([
                det, "none", "", "baseline", _fmt(base.auc_roc), _fmt(100.0),
                _fmt(base.tpr_at_fpr.get(0.05)), _fmt(base.tpr_at_fpr.get(0.10)),
                _fmt(base.tpr_at_fpr.get(0.20)), base.n_pos, base.n_neg,
                _fmt(0.0), _fmt(0.0), _fmt(1.0), _fmt(1.0), "", "False", "",
            ])
        for cell in cells:
            writer.writerow([
                cell.detector, cell.attack, cell.category, cell.budget_level,
                _fmt(cell.result.auc_roc), _fmt(cell.relative_auc),
                _fmt(cell.result.tpr_at_fpr.get(0.05)),
                _fmt(cell.result.tpr_at_fpr.get(0.10)),
                _fmt(cell.result.tpr_at_fpr.get(0.20)),
                cell.result.n_pos, cell.result.n_neg,
                _fmt(cell.budget_stats.mean_edit_distance),
                _fmt(cell.budget_stats.median_edit_distance),
                _fmt(cell.budget_stats.mean_jaro),
                _fmt(cell.budget_stats.mean_ngram_cosine),
                _fmt(cell.budget_stats.mean_perplexity),
                str(cell.incomplete), cell.error,
            ])


def write_leaderboard_csv(path: str | Path,
                          rows: Sequence[LeaderboardRow]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["detector", *CATEGORIES, "overall"])
        for row in rows:
            writer.writerow([
                row.detector,
                *[_fmt(row.category_means[c]) if row.category_means[c] is not None
                  else "- -" for c in CATEGORIES],
                _fmt(row.overall),
            ])


def write_plot_data_csv(path: str | Path, cells: Sequence[SweepCell]) -> None:
    """x = measured mean budget, y = relative AUC, per (detector, attack)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["detector", "attack", "budget_level",
                         "x_mean_edit_distance", "x_mean_jaro",
                         "x_mean_ngram_cosine", "y_relative_auc"])
        for cell in cells:
            if cell.incomplete:
                continue
            writer.writerow([
                cell.detector, cell.attack, cell.budget_level,
                _fmt(cell.budget_stats.mean_edit_distance),
                _fmt(cell.budget_stats.mean_jaro),
                _fmt(cell.budget_stats.mean_ngram_cosine),
                _fmt(cell.relative_auc),
            ])
