"""Pre-generation attacks: prompt paraphrasing, in-context-learning prompt
assembly, and character-substituted generation with exact recovery.

Substitution rules are involutions over unordered character pairs (case
paired: a<->z implies A<->Z), so applying the rule to its own output
recovers the original text exactly.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from ..errors import BackendError, DataError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SubstitutionRule:
    pairs: tuple[tuple[str, str], ...]

    def __post_init__(self):
        used: set[str] = set()
        for x, y in self.pairs:
            if len(x) != 1 or len(y) != 1:
                raise ValueError(f"rule pair ({x!r}, {y!r}) must be single "
                                 "characters")
            if x == y:
                raise ValueError(f"rule pair ({x!r}, {y!r}) is degenerate")
            for c in self._closure(x, y):
                if c in used:
                    raise ValueError(
                        f"character {c!r} appears in more than one pair")
                used.add(c)
        object.__setattr__(self, "_table", self._build_table())

    @staticmethod
    def _closure(x: str, y: str) -> set[str]:
        chars = {x, y}
        if x.upper() != x.lower():
            chars.update({x.upper(), x.lower()})
        if y.upper() != y.lower():
            chars.update({y.upper(), y.lower()})
        return chars

    def _build_table(self) -> dict[int, str]:
        table: dict[int, str] = {}
        for x, y in self.pairs:
            table[ord(x.lower())] = y.lower()
            table[ord(y.lower())] = x.lower()
            if x.upper() != x.lower() or y.upper() != y.lower():
                table[ord(x.upper())] = y.upper()
                table[ord(y.upper())] = x.upper()
        return table

    def apply(self, text: str) -> str:
        """Swap every paired character; an involution (apply twice = id)."""
        return text.translate(self._table)

    @staticmethod
    def parse(spec: str) -> "SubstitutionRule":
        """CLI syntax: comma-separated colon pairs, e.g. 'a:z,c:k'."""
        pairs = []
        for part in spec.split(","):
            part = part.strip()
            if not part:
                continue
            halves = part.split(":")
            if len(halves) != 2:
                raise ValueError(f"bad rule component {part!r}; expected x:y")
            pairs.append((halves[0], halves[1]))
        if not pairs:
            raise ValueError("rule is empty")
        return SubstitutionRule(tuple(pairs))

    def describe(self) -> str:
        clauses = []
        for x, y in self.pairs:
            clauses.append(f"all `{x}'s substituted with `{y}'s and "
                           f"all `{y}'s substituted with `{x}'s")
        return " and ".join(clauses)


def apply_rule(text: str, rule: SubstitutionRule) -> str:
    return rule.apply(text)


def recover(text: str, rule: SubstitutionRule) -> str:
    """Recovery is the same involution applied to the transformed text."""
    return rule.apply(text)


@dataclass(frozen=True)
class IclPromptSpec:
    instruction: str
    positive_example: str  # a related human-written text
    negative_example: str  # a vanilla machine-generated text
    prompt: str


ICL_TEMPLATE = """Definition: {instruction}

Positive Example:
{positive}

Negative Example:
{negative}

Now continue the following text:
{prompt}"""


def build_icl_prompt(spec: IclPromptSpec) -> str:
    """Deterministic instruction + demonstration template; order-sensitive in
    its examples by construction."""
    if not spec.positive_example.strip() or not spec.negative_example.strip():
        raise DataError("ICL prompt requires both a positive and a negative "
                        "example")
    return ICL_TEMPLATE.format(
        instruction=spec.instruction,
        positive=spec.positive_example,
        negative=spec.negative_example,
        prompt=spec.prompt,
    )


def paraphrase_prompt(prompt: str, backend, seed: int = 0) -> tuple[str, bool]:
    """Paraphrase the prompt before generation. Returns (text, paraphrased);
    backend failures are soft: the original prompt is kept and flagged."""
    if not prompt.strip():
        raise ValueError("prompt is empty")
    try:
        out = backend.paraphrase(prompt, seed=seed)
    except BackendError as exc:
        logger.warning("prompt paraphrase failed, keeping original: %s", exc)
        return prompt, False
    if not out.strip():
        logger.warning("prompt paraphrase came back empty, keeping original")
        return prompt, False
    return out, True


CS_INSTRUCTION_TEMPLATE = "Continue the following text with {rules}: {prompt}"


def cs_instruction(prompt: str, rule: SubstitutionRule) -> str:
    return CS_INSTRUCTION_TEMPLATE.format(rules=rule.describe(), prompt=prompt)


@dataclass(frozen=True)
class CsGenResult:
    instruction: str
    raw: str
    recovered: str


def cs_generate(prompt: str, rule: SubstitutionRule, backend,
                max_tokens: int = 120, seed: int = 0, min_tokens: int = 0,
                **sampling) -> CsGenResult:
    """Character-substituted generation: instruct the generator to write under
    the rule, then substitute the mapping back.

    The builtin backend cannot follow instructions, so there the rule is
    applied by a generation step hook, which exercises the same
    generate-then-recover pipeline end to end.
    """
    instruction = cs_instruction(prompt, rule)
    model = getattr(backend, "model", None)
    if model is not None:  # builtin: hook plays the rule-following generator
        raw = model.generate(prompt, max_tokens=max_tokens, seed=seed,
                             min_tokens=min_tokens, step_hook=rule.apply,
                             **sampling)
    else:
        raw = backend.generate(instruction, max_tokens=max_tokens, seed=seed,
                               min_tokens=min_tokens, **sampling)
    return CsGenResult(instruction=instruction, raw=raw,
                       recovered=recover(raw, rule))
