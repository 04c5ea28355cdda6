"""Prompting attacks: substitution rules, ICL assembly, CS generation."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from detstress.attacks.prompt import (ICL_TEMPLATE, CsGenResult, IclPromptSpec,
                                      SubstitutionRule, apply_rule,
                                      build_icl_prompt, cs_generate,
                                      cs_instruction, paraphrase_prompt,
                                      recover)
from detstress.errors import DataError
from detstress.util import tokenize


class TestSubstitutionRule:
    def test_casting_example(self):
        rule = SubstitutionRule.parse("a:z")
        assert apply_rule("casting", rule) == "czsting"
        assert apply_rule("czsting shzdows", rule) == "casting shadows"

    def test_worked_recovery(self):
        rule = SubstitutionRule.parse("a:z")
        raw = "Zs the sun dipped below the horiaon, czsting"
        assert recover(raw, rule) == \
            "As the sun dipped below the horizon, casting"

    def test_case_pairing(self):
        rule = SubstitutionRule.parse("a:z")
        assert apply_rule("AZaz", rule) == "ZAza"

    def test_no_rule_characters_identity(self):
        rule = SubstitutionRule.parse("a:z")
        assert apply_rule("only other letters", rule) == "only other letters"

    def test_multi_pair(self):
        rule = SubstitutionRule.parse("a:z,c:k")
        assert apply_rule("crack", rule) == "krzkc"

    def test_overlapping_pairs_rejected(self):
        with pytest.raises(ValueError, match="more than one pair"):
            SubstitutionRule((("a", "z"), ("z", "b")))
        with pytest.raises(ValueError, match="more than one pair"):
            SubstitutionRule((("a", "z"), ("A", "b")))

    def test_degenerate_pair_rejected(self):
        with pytest.raises(ValueError):
            SubstitutionRule((("a", "a"),))

    def test_parse_errors(self):
        with pytest.raises(ValueError):
            SubstitutionRule.parse("abc")
        with pytest.raises(ValueError):
            SubstitutionRule.parse("")

    @given(st.text(max_size=60),
           st.sampled_from(["a:z", "c:k", "a:z,c:k", "e:q,i:y"]))
    @settings(max_examples=120, deadline=None)
    def test_involution(self, text, spec):
        rule = SubstitutionRule.parse(spec)
        assert recover(apply_rule(text, rule), rule) == text


class TestIclPrompt:
    SPEC = IclPromptSpec(instruction="Continue the story.",
                         positive_example="A human wrote this.",
                         negative_example="A machine wrote this.",
                         prompt="Once upon a time")

    def test_deterministic(self):
        assert build_icl_prompt(self.SPEC) == build_icl_prompt(self.SPEC)
        assert "Positive Example:" in build_icl_prompt(self.SPEC)

    def test_order_sensitive(self):
        swapped = IclPromptSpec(instruction=self.SPEC.instruction,
                                positive_example=self.SPEC.negative_example,
                                negative_example=self.SPEC.positive_example,
                                prompt=self.SPEC.prompt)
        assert build_icl_prompt(self.SPEC) != build_icl_prompt(swapped)

    def test_token_count_is_parts_plus_scaffold(self):
        scaffold_tokens = len(tokenize(ICL_TEMPLATE.format(
            instruction="", positive="", negative="", prompt="")))
        expected = scaffold_tokens + sum(len(tokenize(part)) for part in (
            self.SPEC.instruction, self.SPEC.positive_example,
            self.SPEC.negative_example, self.SPEC.prompt))
        assert len(tokenize(build_icl_prompt(self.SPEC))) == expected

    def test_missing_example_rejected(self):
        bad = IclPromptSpec(instruction="x", positive_example=" ",
                            negative_example="neg", prompt="p")
        with pytest.raises(DataError):
            build_icl_prompt(bad)


class TestParaphrasePrompt:
    def test_empty_prompt_rejected(self, backend):
        with pytest.raises(ValueError):
            paraphrase_prompt("  ", backend)

    def test_toy_backend_changes_covered_prompt(self, backend):
        out, ok = paraphrase_prompt("the gentle breeze faded", backend,
                                    seed=3)
        assert ok and out != "the gentle breeze faded"

    def test_backend_failure_soft(self):
        class DownBackend:
            def paraphrase(self, *a, **k):
                from detstress.errors import BackendError
                raise BackendError("down")

        out, ok = paraphrase_prompt("some prompt", DownBackend())
        assert out == "some prompt" and not ok


class TestCsGenerate:
    def test_instruction_wording(self):
        rule = SubstitutionRule.parse("a:z")
        text = cs_instruction("As the sun", rule)
        assert text == ("Continue the following text with all `a's "
                        "substituted with `z's and all `z's substituted "
                        "with `a's: As the sun")

    def test_toy_pipeline_round_trip(self, backend):
        rule = SubstitutionRule.parse("a:z")
        result = cs_generate("The gentle breeze faded", rule, backend,
                             max_tokens=40, seed=6, min_tokens=10)
        assert isinstance(result, CsGenResult)
        assert recover(result.raw, rule) == result.recovered
        assert apply_rule(result.recovered, rule) == result.raw

    def test_rule_followed_raw_has_no_rule_left_chars(self, backend):
        # the hook applies the rule to every sampled token, so raw output
        # contains 'a' only where the model emitted 'z'
        rule = SubstitutionRule.parse("q:j")
        result = cs_generate("The gentle breeze faded", rule, backend,
                             max_tokens=60, seed=6, min_tokens=20)
        assert "q" not in result.raw or "q" in result.recovered

    def test_rule_free_vocabulary_identity(self, backend):
        # rule over characters absent from the vocabulary: hooked generation
        # equals plain generation with the same seed
        rule = SubstitutionRule.parse("0:9")
        result = cs_generate("The gentle breeze faded", rule, backend,
                             max_tokens=30, seed=8, min_tokens=10)
        plain = backend.model.generate("The gentle breeze faded",
                                       max_tokens=30, seed=8, min_tokens=10)
        assert result.recovered == plain == result.raw

    def test_external_backend_gets_instruction(self):
        calls = {}

        class RecordingBackend:
            def generate(self, prompt, **kw):
                calls["prompt"] = prompt
                return "zz aa"

        rule = SubstitutionRule.parse("a:z")
        result = cs_generate("my prompt", rule, RecordingBackend(), seed=1)
        assert calls["prompt"].startswith("Continue the following text")
        assert result.recovered == "aa zz"
