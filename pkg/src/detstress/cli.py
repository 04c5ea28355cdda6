"""Command-line surface.

Subcommands mirror the pipeline stages: generate, attack, detect, eval,
patch-compare, leaderboard. A sectioned key-value config file (INI) supplies
defaults; every key has a same-named CLI flag that overrides it. All commands
are idempotent and deterministic given (config, seed): staged runs through
attack/detect/eval produce byte-identical results to a one-shot eval because
eval assembles cells from the same intermediate files it would write itself.

Exit codes: 0 success, 1 usage error, 2 data error, 3 backend failure.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import dataclasses
import json
import os
import re
import shlex
import sys
from importlib import resources
from pathlib import Path

import numpy as np

from . import budget as budget_mod
from . import evaluation as eval_mod
from .attacks.edit import EditAttackConfig, EditKind, apply_typo_attack
from .backend import open_backend
from .corpus import (Dataset, Document, Label, Split, derive_prompts,
                     load_dataset, repetition_score, save_dataset)
from .detectors import (DetectGptConfig, DetectGptDetector, DetectionScore,
                        PatchConfig, ingest_external_scores, write_scores)
from .errors import BackendError, DataError, DetstressError
from .evaluation import evaluate_scores
from .pipeline import (DEFAULT_GRID, PipelineContext, SamplingParams,
                       build_attack_specs, build_detectors, default_context,
                       doc_prompt, parse_grid)
from .toylm import NGramModel
from .util import derive_seed
from .watermark import Seeding, WatermarkConfig

DEFAULT_DETECTORS = "gltr,rank,logrank,entropy,detectgpt-10d"
KEY_ENV_VAR = "DETSTRESS_WM_KEY"


def bundled_data_path(name: str) -> Path:
    ref = resources.files("detstress").joinpath(f"data/{name}")
    with resources.as_file(ref) as path:
        return Path(path)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _config_defaults(path: str | None) -> dict[str, str]:
    """Flatten an INI config into {'section.key': value}."""
    if not path:
        return {}
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise DataError(f"config file not found: {path}")
    flat = {}
    for section in parser.sections():
        for key, value in parser.items(section):
            flat[f"{section}.{key}"] = value
    return flat


def _cfg(flat: dict[str, str], key: str, fallback=None):
    return flat.get(key, fallback)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="detstress",
                     description="Stress-test machine-generated-text "
                                 "detectors with budgeted attacks")
    parser.add_argument("--config", help="INI config file; flags override")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--workers", type=int, default=None,
                        help="worker threads (default: all cores)")
    parser.add_argument("--backend-cmd", default=None,
                        help="external bridge command for model-based attacks")
    parser.add_argument("--accounting", choices=["codepoint", "byte"],
                        default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    common_model = argparse.ArgumentParser(add_help=False)
    common_model.add_argument("--train", default=None,
                              help="training corpus JSONL (default: bundled)")
    common_model.add_argument("--model", default=None,
                              help="model dump to load instead of training")
    common_model.add_argument("--order", type=int, default=None)
    common_model.add_argument("--alpha", type=float, default=None)

    common_wm = argparse.ArgumentParser(add_help=False)
    common_wm.add_argument("--watermark", action="store_true", default=None)
    common_wm.add_argument("--gamma", type=float, default=None)
    common_wm.add_argument("--delta", type=float, default=None)
    common_wm.add_argument("--wm-key", type=int, default=None,
                           help=f"watermark key (or ${KEY_ENV_VAR})")
    common_wm.add_argument("--z-threshold", type=float, default=None)
    common_wm.add_argument("--seeding", choices=[s.value for s in Seeding],
                           default=None)

    common_sampling = argparse.ArgumentParser(add_help=False)
    common_sampling.add_argument("--max-tokens", type=int, default=None)
    common_sampling.add_argument("--min-tokens", type=int, default=None)
    common_sampling.add_argument("--temperature", type=float, default=None)
    common_sampling.add_argument("--top-p", type=float, default=None)

    p = sub.add_parser("generate", parents=[common_model, common_wm,
                                            common_sampling],
                       help="train the toy model and generate an MGT dataset")
    p.add_argument("--prompts", default=None,
                   help="eval HWT corpus for prompts (default: bundled)")
    p.add_argument("--count", type=int, default=None,
                   help="number of MGTs (default: all prompt documents)")
    p.add_argument("--cogen", choices=["none", "typo", "emoji"], default=None)
    p.add_argument("--cogen-rule", default=None, help="e.g. c:k")
    p.add_argument("--emoji-probability", type=float, default=None)
    p.add_argument("--save-model", default=None)
    p.add_argument("--out", required=True,
                   help="output dataset JSONL (HWT + generated MGT)")

    p = sub.add_parser("attack", parents=[common_model, common_wm,
                                          common_sampling],
                       help="apply the attack grid to a dataset's MGTs")
    p.add_argument("--dataset", required=True)
    p.add_argument("--grid", default=None)
    p.add_argument("--outdir", required=True)

    p = sub.add_parser("detect", parents=[common_model, common_wm],
                       help="score one dataset file with detectors")
    p.add_argument("--dataset", required=True)
    p.add_argument("--detectors", default=None)
    p.add_argument("--patch-k", type=float, default=None)
    p.add_argument("--outdir", required=True)

    p = sub.add_parser("eval", parents=[common_model, common_wm,
                                        common_sampling],
                       help="full sweep: cells CSV + leaderboard + plot data")
    p.add_argument("--dataset", required=True)
    p.add_argument("--grid", default=None)
    p.add_argument("--manifest", default=None,
                   help="manifest.json from a previous attack run")
    p.add_argument("--detectors", default=None)
    p.add_argument("--patch-k", type=float, default=None)
    p.add_argument("--external-scores", nargs="*", default=None,
                   help="external score files joining the baseline/attacked "
                        "cells by dataset stem")
    p.add_argument("--outdir", required=True)

    p = sub.add_parser("patch-compare", parents=[common_model],
                       help="DetectGPT before attack / after attack / patched")
    p.add_argument("--dataset", required=True)
    p.add_argument("--attack-p", type=float, default=0.1)
    p.add_argument("--variants", default="1d,10d,10z")
    p.add_argument("--patch-k", type=float, default=None)
    p.add_argument("--out", required=True)

    p = sub.add_parser("leaderboard",
                       help="recompute the leaderboard from a cells CSV")
    p.add_argument("--cells", required=True)
    p.add_argument("--out", required=True)
    return parser


# ---------------------------------------------------------------------------
# Shared assembly
# ---------------------------------------------------------------------------

def _resolve(args, flat, attr, key, default):
    value = getattr(args, attr, None)
    if value is not None:
        return value
    raw = _cfg(flat, key)
    if raw is None:
        return default
    if isinstance(default, bool):
        return raw.lower() in ("1", "true", "yes", "on")
    if isinstance(default, int) and not isinstance(default, bool):
        return int(raw)
    if isinstance(default, float):
        return float(raw)
    return raw


def _load_model(args, flat) -> NGramModel:
    model_path = _resolve(args, flat, "model", "model.dump", "")
    if model_path:
        return NGramModel.load(model_path)
    train_path = _resolve(args, flat, "train", "data.train", "") or \
        bundled_data_path("toy_train.jsonl")
    dataset = load_dataset(train_path, Split.TRAIN)
    kwargs = {}
    order = _resolve(args, flat, "order", "model.order", 0)
    if order:
        kwargs["order"] = order
    alpha = _resolve(args, flat, "alpha", "model.alpha", 0.0)
    if alpha:
        kwargs["alpha"] = alpha
    return NGramModel.train([d.text for d in dataset], **kwargs)


def _wm_config(args, flat) -> WatermarkConfig | None:
    enabled = _resolve(args, flat, "watermark", "watermark.enabled", False)
    if not enabled:
        return None
    key = getattr(args, "wm_key", None)
    if key is None:
        env = os.environ.get(KEY_ENV_VAR) or _cfg(flat, "watermark.key")
        key = int(env) if env else WatermarkConfig.key
    return WatermarkConfig(
        gamma=_resolve(args, flat, "gamma", "watermark.gamma",
                       WatermarkConfig.gamma),
        delta=_resolve(args, flat, "delta", "watermark.delta",
                       WatermarkConfig.delta),
        key=key,
        z_threshold=_resolve(args, flat, "z_threshold",
                             "watermark.z_threshold",
                             WatermarkConfig.z_threshold),
        seeding=Seeding(_resolve(args, flat, "seeding", "watermark.seeding",
                                 Seeding.PREV_TOKEN.value)),
    )


def _sampling(args, flat) -> SamplingParams:
    base = SamplingParams()
    return SamplingParams(
        max_tokens=_resolve(args, flat, "max_tokens", "sampling.max_tokens",
                            base.max_tokens),
        min_tokens=_resolve(args, flat, "min_tokens", "sampling.min_tokens",
                            base.min_tokens),
        temperature=_resolve(args, flat, "temperature", "sampling.temperature",
                             base.temperature),
        top_p=_resolve(args, flat, "top_p", "sampling.top_p", base.top_p),
    )


def _context(args, flat, dataset: Dataset | None = None) -> PipelineContext:
    model = _load_model(args, flat)
    backend_cmd = _resolve(args, flat, "backend_cmd", "run.backend_cmd", "")
    backend = None
    if backend_cmd:
        backend = open_backend(backend_cmd=shlex.split(backend_cmd))
    return default_context(model, wm_config=_wm_config(args, flat),
                           sampling=_sampling(args, flat), dataset=dataset,
                           backend=backend)


def _seed(args, flat) -> int:
    return _resolve(args, flat, "seed", "run.seed", 0)


def _workers(args, flat) -> int:
    return _resolve(args, flat, "workers", "run.workers", os.cpu_count() or 1)


def _accounting(args, flat) -> str:
    return _resolve(args, flat, "accounting", "run.accounting", "codepoint")


def _sanitize(label: str) -> str:
    return re.sub(r"[^A-Za-z0-9.+-]+", "_", label).strip("_")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_generate(args, flat) -> int:
    seed = _seed(args, flat)
    model = _load_model(args, flat)
    prompts_path = _resolve(args, flat, "prompts", "data.eval", "") or \
        bundled_data_path("toy_eval_hwt.jsonl")
    hwt_ds = load_dataset(prompts_path, Split.EVAL)
    prompts = derive_prompts(hwt_ds)
    count = _resolve(args, flat, "count", "generate.count", 0) or len(prompts)
    count = min(count, len(prompts))
    sampling = _sampling(args, flat)
    wm = _wm_config(args, flat)
    cogen_kind = _resolve(args, flat, "cogen", "generate.cogen", "none")
    tag = "toylm"
    if wm:
        tag += "+wm"
    if cogen_kind != "none":
        tag += f"+cogen_{cogen_kind}"

    from .attacks import cogen as cogen_mod
    from .pipeline import _cogen_with_optional_wm

    ctx = PipelineContext(model=model, backend=open_backend(model=model),
                          dictionary=None, sampling=sampling, wm_config=wm)
    docs = list(hwt_ds.documents[:count])
    reps = []
    for i in range(count):
        prompt = prompts[i]
        gen_seed = derive_seed(seed, "generate", prompt.source_id)
        if cogen_kind == "none":
            text = ctx.generate(prompt.text, gen_seed)
        else:
            rule = _resolve(args, flat, "cogen_rule", "generate.cogen_rule",
                            "c:k")
            emoji_p = _resolve(args, flat, "emoji_probability",
                               "generate.emoji_probability", 0.5)
            from .attacks.prompt import SubstitutionRule
            cfg = cogen_mod.CogenConfig(
                cogen_mod.CogenKind(cogen_kind),
                rule=SubstitutionRule.parse(rule.replace("+", ",")),
                emoji_probability=emoji_p,
                seed=derive_seed(seed, "cogen", prompt.source_id))
            doc_stub = Document(id=prompt.source_id, text=prompt.text or "-",
                                label=Label.HWT, prompt=prompt.text)
            _, text = _cogen_with_optional_wm(ctx, doc_stub, cfg, gen_seed)
        reps.append(repetition_score(text))
        docs.append(Document(id=f"mgt-{prompt.source_id}", text=text,
                             label=Label.MGT, generator_tag=tag,
                             prompt=prompt.text))
    mean_rep = float(np.mean(reps)) if reps else 0.0
    if mean_rep >= 0.2:
        print(f"warning: mean seq-rep-4 = {mean_rep:.3f} >= 0.2 repetition "
              "gate", file=sys.stderr)
    out = Path(args.out)
    save_dataset(Dataset(split=Split.EVAL, documents=tuple(docs)), out)
    save_model = _resolve(args, flat, "save_model", "model.save", "")
    if save_model:
        model.save(save_model)
    print(f"wrote {out} ({count} HWT + {count} MGT documents, "
          f"seq-rep-4 {mean_rep:.4f})")
    return 0


def _attack_cells(dataset: Dataset, grid: str, ctx: PipelineContext,
                  seed: int) -> list[dict]:
    """Compute attacked texts for every (attack, level); returns cell dicts
    with attacked Document lists."""
    specs = build_attack_specs(grid, ctx)
    mgt = dataset.mgt()
    hwt = dataset.hwt()
    cells = []
    for spec in specs:
        for level in spec.levels:
            attacked_docs = []
            for doc in mgt:
                s = derive_seed(seed, spec.name, level.label, doc.id)
                attacked_docs.append(dataclasses.replace(
                    doc, text=level.apply(doc, s)))
            cells.append({
                "attack": spec.name, "category": spec.category,
                "level": level.label,
                "documents": tuple(hwt) + tuple(attacked_docs),
            })
    return cells


def cmd_attack(args, flat, ctx: PipelineContext | None = None) -> int:
    seed = _seed(args, flat)
    dataset = load_dataset(args.dataset, Split.EVAL)
    ctx = ctx or _context(args, flat, dataset)
    grid = _resolve(args, flat, "grid", "attacks.grid", DEFAULT_GRID)
    outdir = Path(args.outdir)
    attacked_dir = outdir / "attacked"
    manifest = {"original": str(Path(args.dataset)), "seed": seed,
                "grid": grid, "cells": []}
    for cell in _attack_cells(dataset, grid, ctx, seed):
        fname = f"{cell['attack']}__{_sanitize(cell['level'])}.jsonl"
        path = attacked_dir / fname
        save_dataset(Dataset(split=Split.EVAL, documents=cell["documents"]),
                     path)
        manifest["cells"].append({
            "attack": cell["attack"], "category": cell["category"],
            "level": cell["level"], "file": str(path)})
    manifest_path = outdir / "manifest.json"
    manifest_path.parent.mkdir(parents=True, exist_ok=True)
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n",
                             encoding="utf-8")
    print(f"wrote {len(manifest['cells'])} attacked datasets under "
          f"{attacked_dir} (manifest {manifest_path})")
    return 0


def _scores_path(outdir: Path, dataset_path: Path, detector: str) -> Path:
    return outdir / "scores" / dataset_path.stem / f"{detector}.tsv"


def _load_or_compute_scores(detector, dataset: Dataset, dataset_path: Path,
                            outdir: Path, workers: int) -> dict[str, float]:
    path = _scores_path(outdir, dataset_path, detector.name)
    if path.exists():
        _, scored = ingest_external_scores(path,
                                           {d.id for d in dataset})
        return {s.doc_id: s.score for s in scored}
    texts = [d.text for d in dataset]
    values = eval_mod._score_texts(detector, texts, workers)
    scores = [DetectionScore(detector.name, d.id, v)
              for d, v in zip(dataset, values)]
    write_scores(path, detector.name, scores)
    return {s.doc_id: s.score for s in scores}


def cmd_detect(args, flat) -> int:
    dataset_path = Path(args.dataset)
    dataset = load_dataset(dataset_path, Split.EVAL)
    ctx = _context(args, flat, dataset)
    names = (_resolve(args, flat, "detectors", "detectors.names",
                      DEFAULT_DETECTORS)).split(",")
    patch_k = _resolve(args, flat, "patch_k", "detectors.patch_k",
                       PatchConfig().k_percent)
    detectors = build_detectors([n.strip() for n in names if n.strip()], ctx,
                                patch_k=patch_k,
                                detectgpt_seed=_seed(args, flat))
    outdir = Path(args.outdir)
    workers = _workers(args, flat)
    for det in detectors:
        scores = _load_or_compute_scores(det, dataset, dataset_path, outdir,
                                         workers)
        print(f"{det.name}: {len(scores)} scores -> "
              f"{_scores_path(outdir, dataset_path, det.name)}")
    return 0


def cmd_eval(args, flat) -> int:
    seed = _seed(args, flat)
    workers = _workers(args, flat)
    accounting = _accounting(args, flat)
    outdir = Path(args.outdir)
    dataset_path = Path(args.dataset)
    dataset = load_dataset(dataset_path, Split.EVAL)
    ctx = _context(args, flat, dataset)
    names = (_resolve(args, flat, "detectors", "detectors.names",
                      DEFAULT_DETECTORS)).split(",")
    patch_k = _resolve(args, flat, "patch_k", "detectors.patch_k",
                       PatchConfig().k_percent)
    detectors = build_detectors([n.strip() for n in names if n.strip()], ctx,
                                patch_k=patch_k, detectgpt_seed=seed)

    # attacked datasets: from a manifest if given, otherwise computed now
    # (and persisted, so a staged re-run reproduces this run exactly)
    if args.manifest:
        manifest = json.loads(Path(args.manifest).read_text(encoding="utf-8"))
        cell_files = manifest["cells"]
    else:
        attack_args = argparse.Namespace(**vars(args))
        attack_args.outdir = str(outdir)
        cmd_attack(attack_args, flat, ctx)
        manifest = json.loads((outdir / "manifest.json")
                              .read_text(encoding="utf-8"))
        cell_files = manifest["cells"]

    hwt_ids = [d.id for d in dataset.hwt()]
    mgt_docs = dataset.mgt()
    mgt_ids = [d.id for d in mgt_docs]
    original_text = {d.id: d.text for d in mgt_docs}

    baselines: dict[str, eval_mod.EvalResult] = {}
    neg_scores: dict[str, list[float]] = {}
    pos_base: dict[str, list[float]] = {}
    for det in detectors:
        scores = _load_or_compute_scores(det, dataset, dataset_path, outdir,
                                         workers)
        neg_scores[det.name] = [scores[i] for i in hwt_ids]
        pos_base[det.name] = [scores[i] for i in mgt_ids]
        baselines[det.name] = evaluate_scores(pos_base[det.name],
                                              neg_scores[det.name])

    for spath in (args.external_scores or []):
        name, scored = ingest_external_scores(spath, set(hwt_ids) | set(mgt_ids))
        smap = {s.doc_id: s.score for s in scored}
        missing = [i for i in hwt_ids + mgt_ids if i not in smap]
        if missing:
            raise DataError(f"external scores {spath} missing ids "
                            f"{missing[:3]}...")
        neg_scores[name] = [smap[i] for i in hwt_ids]
        pos = [smap[i] for i in mgt_ids]
        baselines[name] = evaluate_scores(pos, neg_scores[name])

    cells: list[eval_mod.SweepCell] = []
    for cell_info in cell_files:
        att_path = Path(cell_info["file"])
        att_ds = load_dataset(att_path, Split.EVAL)
        att_text = {d.id: d.text for d in att_ds.mgt()}
        reports = [budget_mod.measure(original_text[i], att_text[i], accounting)
                   for i in mgt_ids]
        stats = eval_mod.BudgetStats(
            mean_edit_distance=float(np.mean([r.edit_distance
                                              for r in reports])),
            median_edit_distance=float(np.median([r.edit_distance
                                                  for r in reports])),
            mean_jaro=float(np.mean([r.jaro for r in reports])),
            mean_ngram_cosine=float(np.mean([r.ngram_cosine
                                             for r in reports])),
        )
        for det in detectors:
            scores = _load_or_compute_scores(det, att_ds, att_path, outdir,
                                             workers)
            pos = [scores[i] for i in mgt_ids]
            result = evaluate_scores(pos, neg_scores[det.name])
            base = baselines[det.name].auc_roc
            rel = 100.0 * result.auc_roc / base if base > 0 else float("nan")
            cells.append(eval_mod.SweepCell(
                detector=det.name, attack=cell_info["attack"],
                category=cell_info["category"],
                budget_level=cell_info["level"], budget_stats=stats,
                result=result, relative_auc=rel))

    eval_mod.write_cells_csv(outdir / "cells.csv", baselines, cells)
    rows = eval_mod.build_leaderboard(cells)
    eval_mod.write_leaderboard_csv(outdir / "leaderboard.csv", rows)
    eval_mod.write_plot_data_csv(outdir / "plot_data.csv", cells)
    print(f"wrote {outdir / 'cells.csv'}, {outdir / 'leaderboard.csv'}, "
          f"{outdir / 'plot_data.csv'}")
    return 0


def cmd_patch_compare(args, flat) -> int:
    seed = _seed(args, flat)
    dataset = load_dataset(args.dataset, Split.EVAL)
    model = _load_model(args, flat)
    patch_k = _resolve(args, flat, "patch_k", "detectors.patch_k",
                       PatchConfig().k_percent)
    hwt = [d.text for d in dataset.hwt()]
    mgt = [d.text for d in dataset.mgt()]
    attacked = []
    for d in dataset.mgt():
        cfg = EditAttackConfig(EditKind.TYPO_MIXED, args.attack_p,
                               seed=derive_seed(seed, "patch-compare", d.id))
        attacked.append(apply_typo_attack(d.text, cfg)[0])

    rows = []
    for variant in args.variants.split(","):
        variant = variant.strip()
        m = re.match(r"^(\d+)([dz])$", variant)
        if not m:
            raise DataError(f"bad DetectGPT variant {variant!r}")
        config = DetectGptConfig(n_perturbations=int(m.group(1)),
                                 mode=m.group(2), seed=seed)
        plain = DetectGptDetector(model, config)
        patched = DetectGptDetector(model, config, PatchConfig(patch_k))
        neg = [plain.score_text(t) for t in hwt]
        before = eval_mod.roc_auc([plain.score_text(t) for t in mgt], neg)
        after = eval_mod.roc_auc([plain.score_text(t) for t in attacked], neg)
        neg_p = [patched.score_text(t) for t in hwt]
        with_patch = eval_mod.roc_auc(
            [patched.score_text(t) for t in attacked], neg_p)
        rows.append((f"detectgpt-{variant}", before, after, with_patch))

    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["detector", "before_attack", "after_attack",
                         "with_patch"])
        for name, b, a, w in rows:
            writer.writerow([name, f"{b:.4f}", f"{a:.4f}", f"{w:.4f}"])
    for name, b, a, w in rows:
        print(f"{name}: before={b:.4f} after={a:.4f} patched={w:.4f}")
    return 0


def cmd_leaderboard(args, flat) -> int:
    cells = []
    with Path(args.cells).open("r", encoding="utf-8") as fh:
        first = fh.readline()
        if not first.startswith("#"):
            fh.seek(0)
        reader = csv.DictReader(fh)
        for row in reader:
            if row["attack"] == "none" or row["incomplete"] == "True":
                continue
            cells.append(eval_mod.SweepCell(
                detector=row["detector"], attack=row["attack"],
                category=row["category"], budget_level=row["budget_level"],
                budget_stats=eval_mod.BudgetStats(0, 0, 0, 0),
                result=eval_mod.EvalResult(float(row["auc_roc"]), {},
                                           int(row["n_pos"]),
                                           int(row["n_neg"])),
                relative_auc=float(row["relative_auc"])))
    rows = eval_mod.build_leaderboard(cells)
    eval_mod.write_leaderboard_csv(args.out, rows)
    for r in rows:
        cats = "  ".join(
            f"{c}={r.category_means[c]:.2f}" if r.category_means[c] is not None
            else f"{c}=- -" for c in eval_mod.CATEGORIES)
        print(f"{r.detector:24s} {cats}  overall={r.overall:.2f}")
    return 0


COMMANDS = {
    "generate": cmd_generate,
    "attack": cmd_attack,
    "detect": cmd_detect,
    "eval": cmd_eval,
    "patch-compare": cmd_patch_compare,
    "leaderboard": cmd_leaderboard,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        flat = _config_defaults(args.config)
        return COMMANDS[args.command](args, flat)
    except BackendError as exc:
        print(f"backend error: {exc}", file=sys.stderr)
        return 3
    except (DataError, DetstressError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
