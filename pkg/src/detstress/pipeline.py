"""Wiring between configuration and the runner: attack-grid parsing, attack
closures over documents, and detector construction.

Grid syntax: semicolon-separated attacks, each ``name=level,level,...``.
Levels are per-word/unit probabilities for most attacks, ``lex/order``
diversity pairs for inter_sent, substitution rules (pairs joined by ``+``,
e.g. ``a:z+c:k``) for cs_gen and cogen_typo. Attacks without a budget knob
(prompt_para, icl) take no levels.
"""

from __future__ import annotations

import dataclasses
import re
from dataclasses import dataclass
from typing import Sequence

from .attacks import cogen as cogen_mod
from .attacks import edit as edit_mod
from .attacks import para as para_mod
from .attacks import prompt as prompt_mod
from .backend import Backend, BuiltinBackend
from .corpus import Dataset, Document
from .detectors import (DEFAULT_PATCH_K, DetectGptConfig, DetectGptDetector,
                        Detector, MetricDetector, PatchConfig,
                        WatermarkDetector)
from .errors import DataError
from .evaluation import AttackLevel, AttackSpec
from .toylm import NGramModel
from .util import is_sentence_end, rng_from, tokenize
from .watermark import WatermarkConfig, Watermarker, wm_generate

PROMPT_TOKENS = 20

DEFAULT_GRID = (
    "typo_mixed=0.02,0.05,0.1,0.2;"
    "homoglyph=0.02,0.05,0.1,0.2;"
    "format_zws=0.1,0.3,0.6;"
    "format_shift=0.3,0.6;"
    "syn_free=0.1,0.2,0.4;"
    "span=0.1,0.2;"
    "inner_sent=0.25,0.5,1.0;"
    "inter_sent=20/0,40/40,60/60;"
    "prompt_para;"
    "cs_gen=a:z;"
    "cogen_typo=c:k;"
    "cogen_emoji=0.25,0.5,1.0"
)

EDIT_ATTACKS = {
    "typo_insert": edit_mod.EditKind.TYPO_INSERT,
    "typo_delete": edit_mod.EditKind.TYPO_DELETE,
    "typo_substitute": edit_mod.EditKind.TYPO_SUBSTITUTE,
    "typo_transpose": edit_mod.EditKind.TYPO_TRANSPOSE,
    "typo_mixed": edit_mod.EditKind.TYPO_MIXED,
    "homoglyph": edit_mod.EditKind.HOMOGLYPH,
    "format_zws": edit_mod.EditKind.FORMAT_ZWS,
    "format_shift": edit_mod.EditKind.FORMAT_SHIFT,
}

CATEGORY_OF = {**{name: "Edit" for name in EDIT_ATTACKS},
               "syn_free": "Para.", "syn_model": "Para.", "span": "Para.",
               "inner_sent": "Para.", "inter_sent": "Para.",
               "prompt_para": "Prompt", "icl": "Prompt", "cs_gen": "Prompt",
               "cogen_typo": "CoGen.", "cogen_emoji": "CoGen."}


@dataclass(frozen=True)
class SamplingParams:
    max_tokens: int = 120
    min_tokens: int = 30
    temperature: float = 1.0
    top_p: float = 0.96

    def kwargs(self) -> dict:
        return dataclasses.asdict(self)


@dataclass(frozen=True)
class PipelineContext:
    """Everything attacks may need: the generator model, a backend for
    model-based rewrites, the synonym dictionary, sampling defaults, and the
    watermark config when the dataset under attack is watermarked."""
    model: NGramModel
    backend: Backend
    dictionary: para_mod.SynonymDictionary
    sampling: SamplingParams = SamplingParams()
    wm_config: WatermarkConfig | None = None
    icl_positive: str = ""
    icl_negative: str = ""

    def generate(self, prompt: str, seed: int) -> str:
        if self.wm_config is not None and self.wm_config.delta > 0:
            return wm_generate(self.model, prompt, self.wm_config,
                               seed=seed, **self.sampling.kwargs())
        return self.model.generate(prompt, seed=seed, **self.sampling.kwargs())


def doc_prompt(doc: Document, n_tokens: int = PROMPT_TOKENS) -> str:
    """The document's stored prompt, or its leading tokens as a fallback."""
    if doc.prompt:
        return doc.prompt
    return " ".join(tokenize(doc.text)[:n_tokens])


def parse_grid(grid: str) -> list[tuple[str, list[str]]]:
    out = []
    for part in grid.split(";"):
        part = part.strip()
        if not part:
            continue
        if "=" in part:
            name, _, levels = part.partition("=")
            level_list = [l.strip() for l in levels.split(",") if l.strip()]
        else:
            name, level_list = part, []
        name = name.strip()
        if name not in CATEGORY_OF:
            raise DataError(f"unknown attack {name!r}")
        out.append((name, level_list))
    return out


def _rule_from_level(level: str) -> prompt_mod.SubstitutionRule:
    return prompt_mod.SubstitutionRule.parse(level.replace("+", ","))


def build_attack_spec(name: str, levels: Sequence[str],
                      ctx: PipelineContext) -> AttackSpec:
    category = CATEGORY_OF[name]
    built: list[AttackLevel] = []

    if name in EDIT_ATTACKS:
        kind = EDIT_ATTACKS[name]
        table = edit_mod.HomoglyphTable.bundled() if kind is \
            edit_mod.EditKind.HOMOGLYPH else None
        for level in levels or ["0.1"]:
            p = float(level)

            def apply(doc, seed, _p=p):
                cfg = edit_mod.EditAttackConfig(kind, _p, seed=seed)
                return edit_mod.apply_edit_attack(doc.text, cfg, table)[0]

            built.append(AttackLevel(label=f"p={p}", apply=apply))

    elif name == "syn_free":
        for level in levels or ["0.2"]:
            rate = float(level)

            def apply(doc, seed, _rate=rate):
                cfg = para_mod.ParaAttackConfig(para_mod.ParaKind.SYN_FREE,
                                                rate=_rate, seed=seed)
                return para_mod.synonym_substitute_free(
                    doc.text, cfg, ctx.dictionary)[0]

            built.append(AttackLevel(label=f"rate={rate}", apply=apply))

    elif name == "syn_model":
        for level in levels or ["0.2"]:
            rate = float(level)

            def apply(doc, seed, _rate=rate):
                cfg = para_mod.ParaAttackConfig(para_mod.ParaKind.SYN_MODEL,
                                                rate=_rate, seed=seed)
                return para_mod.synonym_substitute_model(
                    doc.text, cfg, ctx.backend)[0]

            built.append(AttackLevel(label=f"rate={rate}", apply=apply))

    elif name == "span":
        for level in levels or ["0.15"]:
            rate = float(level)

            def apply(doc, seed, _rate=rate):
                cfg = para_mod.ParaAttackConfig(para_mod.ParaKind.SPAN,
                                                rate=_rate, span_len=2,
                                                seed=seed)
                return para_mod.span_perturb(doc.text, cfg, ctx.backend)

            built.append(AttackLevel(label=f"rate={rate}", apply=apply))

    elif name == "inner_sent":
        for level in levels or ["0.5"]:
            rate = float(level)

            def apply(doc, seed, _rate=rate):
                cfg = para_mod.ParaAttackConfig(para_mod.ParaKind.INNER_SENT,
                                                rate=_rate, seed=seed)
                return para_mod.paraphrase_sentences(doc.text, cfg, ctx.backend)

            built.append(AttackLevel(label=f"rate={rate}", apply=apply))

    elif name == "inter_sent":
        for level in levels or ["60/60"]:
            lex_s, _, order_s = level.partition("/")
            lex, order = int(lex_s), int(order_s or 0)

            def apply(doc, seed, _lex=lex, _order=order):
                cfg = para_mod.ParaAttackConfig(
                    para_mod.ParaKind.INTER_SENT, rate=1.0,
                    lex_diversity=_lex, order_diversity=_order, seed=seed)
                return para_mod.paraphrase_sentences(doc.text, cfg, ctx.backend)

            built.append(AttackLevel(label=f"lex={lex}/order={order}",
                                     apply=apply))

    elif name == "prompt_para":
        def apply(doc, seed):
            prompt = doc_prompt(doc)
            new_prompt, _ = prompt_mod.paraphrase_prompt(prompt, ctx.backend,
                                                         seed=seed)
            return ctx.generate(new_prompt, seed)

        # paraphrasing a 20-token prompt has no controllable budget knob
        built.append(AttackLevel(label="n/a", apply=apply))

    elif name == "icl":
        if not ctx.icl_positive or not ctx.icl_negative:
            raise DataError("icl attack needs positive/negative examples in "
                            "the pipeline context")

        def apply(doc, seed):
            spec = prompt_mod.IclPromptSpec(
                instruction="Continue the news story in the style of the "
                            "positive example.",
                positive_example=ctx.icl_positive,
                negative_example=ctx.icl_negative,
                prompt=doc_prompt(doc))
            return ctx.generate(prompt_mod.build_icl_prompt(spec), seed)

        built.append(AttackLevel(label="n/a", apply=apply))

    elif name == "cs_gen":
        for level in levels or ["a:z"]:
            rule = _rule_from_level(level)

            def apply(doc, seed, _rule=rule):
                result = prompt_mod.cs_generate(
                    doc_prompt(doc), _rule, ctx.backend, seed=seed,
                    **ctx.sampling.kwargs())
                return result.recovered

            built.append(AttackLevel(label=f"rule={level}", apply=apply))

    elif name == "cogen_typo":
        for level in levels or ["c:k"]:
            rule = _rule_from_level(level)

            def apply(doc, seed, _rule=rule):
                cfg = cogen_mod.CogenConfig(cogen_mod.CogenKind.TYPO,
                                            rule=_rule, seed=seed)
                return _cogen_with_optional_wm(ctx, doc, cfg, seed)[1]

            built.append(AttackLevel(label=f"rule={level}", apply=apply))

    elif name == "cogen_emoji":
        for level in levels or ["0.5"]:
            p = float(level)

            def apply(doc, seed, _p=p):
                cfg = cogen_mod.CogenConfig(cogen_mod.CogenKind.EMOJI,
                                            emoji_probability=_p, seed=seed)
                return _cogen_with_optional_wm(ctx, doc, cfg, seed)[1]

            built.append(AttackLevel(label=f"p={p}", apply=apply))

    else:  # pragma: no cover - parse_grid already validated
        raise DataError(f"unknown attack {name!r}")

    return AttackSpec(name=name, category=category, levels=tuple(built))


def _cogen_with_optional_wm(ctx: PipelineContext, doc: Document,
                            cfg: cogen_mod.CogenConfig,
                            seed: int) -> tuple[str, str]:
    prompt = doc_prompt(doc)
    if ctx.wm_config is not None and ctx.wm_config.delta > 0:
        # co-generation under an active watermark: hook rewrites after the
        # bias (perturbed tokens join the hash chain for the next step)
        wm = Watermarker(ctx.wm_config, ctx.model.vocab)
        if cfg.kind is cogen_mod.CogenKind.TYPO:
            raw = ctx.model.generate(prompt, seed=seed,
                                     step_hook=cfg.rule.apply,
                                     logit_bias=wm.logit_bias,
                                     **ctx.sampling.kwargs())
            return raw, cfg.rule.apply(raw)
        hook_rng_holder = rng_from("cogen-emoji", cfg.seed)
        emoji = cfg.emoji_list

        def hook(token: str):
            if is_sentence_end(token) and \
                    hook_rng_holder.random() < cfg.emoji_probability:
                return [token, emoji[int(hook_rng_holder.integers(len(emoji)))]]
            return None

        raw = ctx.model.generate(prompt, seed=seed, step_hook=hook,
                                 logit_bias=wm.logit_bias,
                                 **ctx.sampling.kwargs())
        return raw, cogen_mod.strip_emoji(raw, emoji)
    return cogen_mod.cogen_attack(ctx.model, prompt, cfg, seed=seed,
                                  **ctx.sampling.kwargs())


def build_attack_specs(grid: str, ctx: PipelineContext) -> list[AttackSpec]:
    return [build_attack_spec(name, levels, ctx)
            for name, levels in parse_grid(grid)]


_DETECTGPT_RE = re.compile(r"^detectgpt-(\d+)([dz])(-patched)?$")


def build_detector(name: str, ctx: PipelineContext,
                   patch_k: float = DEFAULT_PATCH_K,
                   detectgpt_seed: int = 0) -> Detector:
    if name in MetricDetector.AGGREGATIONS:
        return MetricDetector(name, ctx.backend)
    m = _DETECTGPT_RE.match(name)
    if m:
        config = DetectGptConfig(n_perturbations=int(m.group(1)),
                                 mode=m.group(2), seed=detectgpt_seed)
        patch = PatchConfig(patch_k) if m.group(3) else None
        return DetectGptDetector(ctx.model, config, patch)
    if name == "watermark":
        if ctx.wm_config is None:
            raise DataError("watermark detector needs a watermark config")
        return WatermarkDetector(ctx.wm_config, ctx.model.vocab)
    raise DataError(f"unknown detector {name!r}")


def build_detectors(names: Sequence[str], ctx: PipelineContext,
                    patch_k: float = DEFAULT_PATCH_K,
                    detectgpt_seed: int = 0) -> list[Detector]:
    return [build_detector(n, ctx, patch_k, detectgpt_seed) for n in names]


def pick_icl_examples(dataset: Dataset) -> tuple[str, str]:
    """First HWT / first MGT of the dataset as the fixed demonstrations."""
    hwt = dataset.hwt()
    mgt = dataset.mgt()
    return (hwt[0].text if hwt else "", mgt[0].text if mgt else "")


def default_context(model: NGramModel,
                    wm_config: WatermarkConfig | None = None,
                    sampling: SamplingParams | None = None,
                    dataset: Dataset | None = None,
                    backend: Backend | None = None) -> PipelineContext:
    dictionary = para_mod.SynonymDictionary.bundled()
    backend = backend or BuiltinBackend(model, dictionary)
    pos, neg = pick_icl_examples(dataset) if dataset else ("", "")
    return PipelineContext(model=model, backend=backend,
                           dictionary=dictionary,
                           sampling=sampling or SamplingParams(),
                           wm_config=wm_config,
                           icl_positive=pos, icl_negative=neg)
