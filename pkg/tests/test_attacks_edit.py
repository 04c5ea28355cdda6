"""Editing attacks: typos, homoglyphs, format characters."""

import numpy as np
import pytest

from detstress.attacks.edit import (MIXED_KINDS, MIXED_WEIGHTS, ZWS,
                                    EditAttackConfig, EditKind,
                                    HomoglyphTable, apply_format_attack,
                                    apply_homoglyph_attack, apply_typo_attack,
                                    draw_mixed_kind, strip_zws)
from detstress.budget import edit_distance
from detstress.errors import DataError
from detstress.util import rng_from

TEXT = ("The gentle breeze faded quietly. The captain waited near the old "
        "lighthouse! Was the harbor really so calm? The merchant bought "
        "the golden lantern.")


def _cfg(kind, p, seed=0, **kw):
    return EditAttackConfig(kind, p, seed=seed, **kw)


class TestTypo:
    def test_p_zero_identity(self):
        out, n = apply_typo_attack(TEXT, _cfg(EditKind.TYPO_MIXED, 0.0))
        assert out == TEXT and n == 0

    def test_single_deletion(self):
        out, n = apply_typo_attack("abc", _cfg(EditKind.TYPO_DELETE, 1.0))
        assert n == 1 and len(out) == 2
        assert edit_distance("abc", out) == 1

    def test_one_edit_per_word(self):
        out, n = apply_typo_attack(TEXT, _cfg(EditKind.TYPO_SUBSTITUTE, 1.0))
        assert n == len(TEXT.split())
        assert edit_distance(TEXT, out) <= n

    def test_word_count_preserved_by_substitution_and_transposition(self):
        for kind in (EditKind.TYPO_SUBSTITUTE, EditKind.TYPO_TRANSPOSE):
            out, _ = apply_typo_attack(TEXT, _cfg(kind, 1.0, seed=3))
            assert len(out.split()) == len(TEXT.split())

    def test_whitespace_structure_preserved(self):
        text = "a  b\tc\nd"
        out, _ = apply_typo_attack(text, _cfg(EditKind.TYPO_SUBSTITUTE, 1.0))
        import re
        assert re.findall(r"\s+", out) == re.findall(r"\s+", text)

    def test_pure_transpose_skips_short_words(self):
        out, n = apply_typo_attack("a b c", _cfg(EditKind.TYPO_TRANSPOSE, 1.0))
        assert out == "a b c" and n == 0

    def test_transpose_swaps_adjacent(self):
        out, n = apply_typo_attack("abcd", _cfg(EditKind.TYPO_TRANSPOSE, 1.0))
        assert n == 1 and sorted(out) == sorted("abcd") and out != "abcd"

    def test_determinism(self):
        cfg = _cfg(EditKind.TYPO_MIXED, 0.3, seed=11)
        assert apply_typo_attack(TEXT, cfg) == apply_typo_attack(TEXT, cfg)

    def test_mixed_kind_distribution(self):
        rng = rng_from("test-mixed", 0)
        counts = {k: 0 for k in MIXED_KINDS}
        n = 20000
        for _ in range(n):
            counts[draw_mixed_kind(rng)] += 1
        for kind, weight in zip(MIXED_KINDS, MIXED_WEIGHTS):
            assert abs(counts[kind] / n - weight) < 0.01

    def test_wrong_kind_rejected(self):
        with pytest.raises(ValueError):
            apply_typo_attack(TEXT, _cfg(EditKind.HOMOGLYPH, 0.5))

    def test_budget_monotone_in_p(self, mgt_texts):
        grid = [0.02, 0.05, 0.1, 0.2, 0.4]
        means = []
        for p in grid:
            dists = []
            for i, text in enumerate(mgt_texts):
                out, _ = apply_typo_attack(text, _cfg(EditKind.TYPO_MIXED, p,
                                                      seed=i))
                dists.append(edit_distance(text, out))
            means.append(np.mean(dists))
        assert means == sorted(means)


class TestHomoglyph:
    def test_table_valid(self):
        table = HomoglyphTable.bundled()
        assert len(table.mapping) == 52
        assert all(len(v) == 1 and v != k for k, v in table.mapping.items())

    def test_injective_required(self):
        with pytest.raises(DataError, match="injective"):
            HomoglyphTable({"a": "х", "b": "х"})

    def test_identity_mapping_rejected(self):
        with pytest.raises(DataError):
            HomoglyphTable({"a": "a"})

    def test_p_zero_identity(self):
        out, n = apply_homoglyph_attack(TEXT, _cfg(EditKind.HOMOGLYPH, 0.0))
        assert out == TEXT and n == 0

    def test_cyrillic_a(self):
        out, n = apply_homoglyph_attack("a", _cfg(EditKind.HOMOGLYPH, 1.0))
        assert n == 1 and out == "а"
        assert edit_distance("a", out) == 1

    def test_codepoint_count_unchanged_distance_equals_count(self):
        out, n = apply_homoglyph_attack(TEXT, _cfg(EditKind.HOMOGLYPH, 0.5,
                                                   seed=7))
        assert len(out) == len(TEXT)
        assert edit_distance(TEXT, out) == n

    def test_inverse_table_recovers(self):
        table = HomoglyphTable.bundled()
        out, _ = apply_homoglyph_attack(TEXT, _cfg(EditKind.HOMOGLYPH, 1.0),
                                        table)
        assert table.inverse().substitute_all(out) == TEXT

    def test_unmappable_word_skipped(self):
        out, n = apply_homoglyph_attack("123 456", _cfg(EditKind.HOMOGLYPH,
                                                        1.0))
        assert out == "123 456" and n == 0


class TestFormat:
    def test_p_zero_identity(self):
        for kind in (EditKind.FORMAT_ZWS, EditKind.FORMAT_SHIFT):
            out, n = apply_format_attack(TEXT, _cfg(kind, 0.0))
            assert out == TEXT and n == 0

    def test_zws_strip_recovers(self):
        out, n = apply_format_attack(TEXT, _cfg(EditKind.FORMAT_ZWS, 0.6,
                                                seed=5))
        assert n > 0 and ZWS in out
        assert strip_zws(out) == TEXT
        assert edit_distance(TEXT, out) == n
        assert edit_distance(TEXT, out, "byte") == 2 * n

    def test_shift_at_sentence_ends_only(self):
        out, n = apply_format_attack(TEXT, _cfg(EditKind.FORMAT_SHIFT, 1.0,
                                                seed=5))
        assert n == 4  # four sentence enders in TEXT
        for ch in ("\n", "\r", ""):
            for idx in [i for i, c in enumerate(out) if c == ch]:
                assert out[idx - 1] in ".!?"

    def test_determinism(self):
        cfg = _cfg(EditKind.FORMAT_ZWS, 0.5, seed=2)
        assert apply_format_attack(TEXT, cfg) == apply_format_attack(TEXT, cfg)
