"""Decoding-time attacks through the generation step hook.

Typo co-generation rewrites each sampled token by an involution rule before
it enters the context; emoji co-generation appends an emoji token after
sentence ends with a tunable probability. Both clean the visible trace
post-generation, leaving only the sampling distribution shift behind.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources

from ..toylm import NGramModel
from ..util import is_sentence_end, rng_from
from .prompt import SubstitutionRule

DEFAULT_RULE = SubstitutionRule((("c", "k"),))


class CogenKind(str, Enum):
    TYPO = "typo"
    EMOJI = "emoji"


def load_emoji_list() -> tuple[str, ...]:
    ref = resources.files("detstress").joinpath("data/emoji.txt")
    return tuple(line for line in ref.read_text(encoding="utf-8").split()
                 if line)


@dataclass(frozen=True)
class CogenConfig:
    kind: CogenKind
    rule: SubstitutionRule = DEFAULT_RULE
    emoji_probability: float = 0.5
    emoji_list: tuple[str, ...] = field(default_factory=load_emoji_list)
    seed: int = 0

    def __post_init__(self):
        if not (0.0 <= self.emoji_probability <= 1.0):
            raise ValueError("emoji_probability must be in [0, 1]")


def cogen_typo(model: NGramModel, prompt: str, config: CogenConfig,
               max_tokens: int = 120, seed: int = 0, min_tokens: int = 0,
               **sampling) -> tuple[str, str]:
    """Generate with the rule applied to every sampled token; cleaned text is
    the involution applied to the full raw output, so cleanup is exact while
    the sampling trajectory was conditioned on the perturbed context."""
    raw = model.generate(prompt, max_tokens=max_tokens, seed=seed,
                         min_tokens=min_tokens, step_hook=config.rule.apply,
                         **sampling)
    return raw, config.rule.apply(raw)


def strip_emoji(text: str, emoji_list: tuple[str, ...]) -> str:
    """Remove every listed emoji codepoint and collapse the doubled spaces
    each removal leaves behind."""
    for e in emoji_list:
        text = text.replace(e, "")
    text = re.sub(r"  +", " ", text)
    return text.strip()


def cogen_emoji(model: NGramModel, prompt: str, config: CogenConfig,
                max_tokens: int = 120, seed: int = 0, min_tokens: int = 0,
                **sampling) -> tuple[str, str]:
    """After each sentence-ending token, append one emoji to the context with
    probability p; cleanup removes all emoji codepoints."""
    hook_rng = rng_from("cogen-emoji", config.seed)
    emoji = config.emoji_list

    def hook(token: str):
        if is_sentence_end(token) and hook_rng.random() < config.emoji_probability:
            return [token, emoji[int(hook_rng.integers(len(emoji)))]]
        return None

    raw = model.generate(prompt, max_tokens=max_tokens, seed=seed,
                         min_tokens=min_tokens, step_hook=hook, **sampling)
    return raw, strip_emoji(raw, emoji)


def cogen_attack(model: NGramModel, prompt: str, config: CogenConfig,
                 max_tokens: int = 120, seed: int = 0, min_tokens: int = 0,
                 **sampling) -> tuple[str, str]:
    if config.kind is CogenKind.TYPO:
        return cogen_typo(model, prompt, config, max_tokens=max_tokens,
                          seed=seed, min_tokens=min_tokens, **sampling)
    return cogen_emoji(model, prompt, config, max_tokens=max_tokens,
                       seed=seed, min_tokens=min_tokens, **sampling)
