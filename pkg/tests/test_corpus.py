"""Corpus loading, persistence, prompts, and repetition scoring."""

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from detstress.corpus import (Dataset, Document, Label, Split, derive_prompts,
                              load_dataset, repetition_score, save_dataset,
                              synthesize_hwt)
from detstress.errors import DataError


def _doc(i, text="some text here", label=Label.HWT, **kw):
    return Document(id=f"d{i}", text=text, label=label, **kw)


class TestDocument:
    def test_empty_text_rejected(self):
        with pytest.raises(DataError):
            Document(id="x", text="   ", label=Label.HWT)

    def test_duplicate_ids_rejected(self):
        with pytest.raises(DataError, match="d0"):
            Dataset(split=Split.TRAIN, documents=(_doc(0), _doc(0)))


class TestLoadSave:
    def test_round_trip_plain(self, tmp_path):
        ds = Dataset(split=Split.TRAIN,
                     documents=(_doc(0), _doc(1, label=Label.MGT,
                                              generator_tag="g", prompt="p")))
        path = tmp_path / "ds.jsonl"
        save_dataset(ds, path)
        loaded = load_dataset(path, "train")
        assert loaded.documents == ds.documents

    def test_round_trip_preserves_control_codepoints(self, tmp_path):
        # format attacks embed zero-width and shift characters; persistence
        # must keep them codepoint-exact
        tricky = "a​b c\nd ef га"
        ds = Dataset(split=Split.EVAL, documents=(_doc(0, text=tricky),))
        path = tmp_path / "ds.jsonl"
        save_dataset(ds, path)
        assert load_dataset(path, Split.EVAL).documents[0].text == tricky

    def test_malformed_line_reports_number(self, tmp_path):
        path = tmp_path / "bad.jsonl"
        path.write_text('{"id": "a", "text": "t", "label": "HWT"}\nnot json\n',
                        encoding="utf-8")
        with pytest.raises(DataError, match=":2"):
            load_dataset(path, "train")

    def test_duplicate_id_names_it(self, tmp_path):
        rec = {"id": "dup", "text": "t", "label": "HWT"}
        path = tmp_path / "dup.jsonl"
        path.write_text(json.dumps(rec) + "\n" + json.dumps(rec) + "\n",
                        encoding="utf-8")
        with pytest.raises(DataError, match="dup"):
            load_dataset(path, "train")

    def test_unknown_label(self, tmp_path):
        path = tmp_path / "lab.jsonl"
        path.write_text('{"id": "a", "text": "t", "label": "ALIEN"}\n',
                        encoding="utf-8")
        with pytest.raises(DataError, match="ALIEN"):
            load_dataset(path, "train")

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataError, match="not found"):
            load_dataset(tmp_path / "nope.jsonl", "train")

    def test_balanced_counts(self, tmp_path):
        docs = tuple(_doc(i) for i in range(4)) + tuple(
            _doc(i + 10, label=Label.MGT) for i in range(4))
        ds = Dataset(split=Split.TRAIN, documents=docs)
        assert ds.balanced and ds.label_counts() == (4, 4)
        path = tmp_path / "b.jsonl"
        save_dataset(ds, path)
        assert load_dataset(path, "train", require_balanced=True).balanced

    def test_unbalanced_rejected_when_required(self, tmp_path):
        ds = Dataset(split=Split.TRAIN, documents=(_doc(0),))
        path = tmp_path / "u.jsonl"
        save_dataset(ds, path)
        with pytest.raises(DataError, match="unbalanced"):
            load_dataset(path, "train", require_balanced=True)


class TestDerivePrompts:
    def test_prefix(self):
        ds = Dataset(split=Split.EVAL, documents=(_doc(0, text="a b c d"),))
        prompts = derive_prompts(ds, 2)
        assert prompts[0].text == "a b" and not prompts[0].truncated

    def test_short_document_flagged(self):
        text = " ".join(f"w{i}" for i in range(19))
        ds = Dataset(split=Split.EVAL, documents=(_doc(0, text=text),))
        prompts = derive_prompts(ds, 20)
        assert prompts[0].text == text and prompts[0].truncated

    def test_count_equals_hwt_count(self, eval_hwt):
        prompts = derive_prompts(eval_hwt)
        assert len(prompts) == len(eval_hwt.hwt())

    def test_requires_hwt(self):
        ds = Dataset(split=Split.EVAL,
                     documents=(_doc(0, label=Label.MGT),))
        with pytest.raises(DataError):
            derive_prompts(ds)

    def test_n_tokens_validated(self, eval_hwt):
        with pytest.raises(ValueError):
            derive_prompts(eval_hwt, 0)


class TestRepetitionScore:
    def test_no_repeats(self):
        assert repetition_score("a b c d e", 4) == 0.0

    def test_hand_case_bigrams(self):
        # 7 bigrams; first "a b" and first "b a" unseen, 5 repeats
        assert repetition_score("a b a b a b a b", 2) == pytest.approx(5 / 7)

    def test_short_text(self):
        assert repetition_score("a b", 4) == 0.0

    @given(st.lists(st.sampled_from("ab"), min_size=0, max_size=30))
    @settings(max_examples=60, deadline=None)
    def test_bounded_and_zero_iff_distinct(self, tokens):
        text = " ".join(tokens)
        score = repetition_score(text, 2)
        assert 0.0 <= score <= 1.0
        grams = [tuple(tokens[i:i + 2]) for i in range(len(tokens) - 1)]
        if grams:
            assert (score == 0.0) == (len(set(grams)) == len(grams))


class TestBalancedLoad:
    def test_8000_balanced_records(self, tmp_path):
        # loading a full-size balanced train file reports 4000 + 4000;
        # the oracle is an independent line count over the raw file
        path = tmp_path / "train8000.jsonl"
        with path.open("w", encoding="utf-8") as fh:
            for i in range(4000):
                fh.write(json.dumps({"id": f"h{i}", "text": f"human {i}",
                                     "label": "HWT"}) + "\n")
                fh.write(json.dumps({"id": f"m{i}", "text": f"machine {i}",
                                     "label": "MGT"}) + "\n")
        n_lines = sum(1 for line in path.open(encoding="utf-8") if line.strip())
        ds = load_dataset(path, "train", require_balanced=True)
        assert n_lines == 8000 and len(ds) == n_lines
        assert ds.label_counts() == (4000, 4000)

    def test_default_split_sizes(self):
        from detstress.corpus import SPLIT_SIZES, synthesize_default_splits
        assert SPLIT_SIZES == {"train": 8000, "eval": 1000, "test": 1000}
        splits = synthesize_default_splits(seed=1, sizes={"train": 4,
                                                          "eval": 2,
                                                          "test": 2})
        assert {s.value: len(d) for s, d in splits.items()} == \
            {"train": 4, "eval": 2, "test": 2}


class TestSynthesize:
    def test_deterministic(self):
        a = synthesize_hwt(5, seed=7, split="train")
        b = synthesize_hwt(5, seed=7, split="train")
        assert [d.text for d in a] == [d.text for d in b]

    def test_labels_and_ids(self):
        ds = synthesize_hwt(5, seed=7, split="eval", id_prefix="x")
        assert all(d.label is Label.HWT for d in ds)
        assert ds.documents[0].id == "x-eval-00000"

    def test_long_enough_for_prompts(self):
        ds = synthesize_hwt(20, seed=1, split="train")
        assert all(len(d.text.split()) >= 25 for d in ds)
