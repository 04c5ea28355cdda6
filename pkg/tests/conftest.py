"""Shared fixtures: the bundled toy corpus, a trained model, and a generated
machine-text evaluation set. Session-scoped because training and generation
are deterministic and reused by many tests."""

from __future__ import annotations

import pytest

from detstress.backend import BuiltinBackend
from detstress.corpus import (Dataset, Document, Label, Split, derive_prompts,
                              load_dataset)
from detstress.attacks.para import SynonymDictionary
from detstress.cli import bundled_data_path
from detstress.toylm import NGramModel
from detstress.util import derive_seed

N_EVAL = 200


@pytest.fixture(scope="session")
def train_corpus() -> Dataset:
    return load_dataset(bundled_data_path("toy_train.jsonl"), Split.TRAIN)


@pytest.fixture(scope="session")
def eval_hwt() -> Dataset:
    return load_dataset(bundled_data_path("toy_eval_hwt.jsonl"), Split.EVAL)


@pytest.fixture(scope="session")
def model(train_corpus) -> NGramModel:
    return NGramModel.train([d.text for d in train_corpus])


@pytest.fixture(scope="session")
def mgt_texts(model, eval_hwt) -> list[str]:
    prompts = derive_prompts(eval_hwt)[:N_EVAL]
    return [model.generate(p.text, max_tokens=120, min_tokens=30,
                           seed=derive_seed(99, "fixture-mgt", p.source_id))
            for p in prompts]


@pytest.fixture(scope="session")
def toy_dataset(eval_hwt, mgt_texts) -> Dataset:
    """Balanced eval split: bundled HWT + freshly generated MGT."""
    prompts = derive_prompts(eval_hwt)[:N_EVAL]
    docs = list(eval_hwt.documents[:N_EVAL])
    for p, text in zip(prompts, mgt_texts):
        docs.append(Document(id=f"mgt-{p.source_id}", text=text,
                             label=Label.MGT, generator_tag="toylm",
                             prompt=p.text))
    return Dataset(split=Split.EVAL, documents=tuple(docs))


@pytest.fixture(scope="session")
def backend(model) -> BuiltinBackend:
    return BuiltinBackend(model)


@pytest.fixture(scope="session")
def dictionary() -> SynonymDictionary:
    return SynonymDictionary.bundled()
