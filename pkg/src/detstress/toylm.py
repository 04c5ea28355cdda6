"""Deterministic word-level n-gram language model with Laplace smoothing.

Stands in for a large generator LM at desk scale: trains in milliseconds,
scores, generates with nucleus sampling, and fills masked spans. Everything
is reproducible: the vocabulary is sorted lexicographically, rank ties break
by vocabulary order, and each call takes an explicit seed.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import DataError
from .util import rng_from, tokenize

logger = logging.getLogger(__name__)

BOS = "<bos>"
EOS = "<eos>"
UNK = "<unk>"
RESERVED = (BOS, EOS, UNK)

DEFAULT_ORDER = 3
DEFAULT_ALPHA = 3e-4
DEFAULT_TOP_P = 0.96
DEFAULT_TEMPERATURE = 1.0

# step_hook receives each sampled token and may return None (keep it), a
# replacement string, or a sequence [replacement, extra, ...] whose members
# are all appended to the output and the sampling context.
StepHook = Callable[[str], "str | Sequence[str] | None"]
# logit_bias maps the current context ids to a per-vocabulary additive bias
# in log space, applied before temperature and top-p. Used by the watermark.
LogitBias = Callable[[tuple[int, ...]], "np.ndarray | None"]


@dataclass(frozen=True)
class TokenScore:
    token: str
    logprob: float
    rank: int
    entropy: float


class _ContextStats:
    """Cached per-context view: sparse counts plus derived quantities."""

    __slots__ = ("ids", "cnts", "total", "entropy")

    def __init__(self, ids: np.ndarray, cnts: np.ndarray, total: int,
                 entropy: float):
        self.ids = ids
        self.cnts = cnts
        self.total = total
        self.entropy = entropy


class NGramModel:
    def __init__(self, order: int, alpha: float, vocab: list[str],
                 counts: dict[tuple[int, ...], dict[int, int]]):
        if order < 2:
            raise ValueError("order must be >= 2")
        if alpha <= 0:
            raise ValueError("alpha must be > 0")
        self.order = order
        self.alpha = float(alpha)
        self.vocab = list(vocab)
        self.index = {t: i for i, t in enumerate(self.vocab)}
        self.counts = counts
        self.bos_id = self.index[BOS]
        self.eos_id = self.index[EOS]
        self.unk_id = self.index[UNK]
        self._ctx_cache: dict[tuple[int, ...], _ContextStats] = {}

    # -- construction -------------------------------------------------------

    @staticmethod
    def train(corpus: Iterable[Sequence[str] | str], order: int = DEFAULT_ORDER,
              alpha: float = DEFAULT_ALPHA) -> "NGramModel":
        """Count n-grams over tokenized documents. Vocabulary is the corpus
        types plus the reserved tokens, sorted lexicographically."""
        docs = [tokenize(d) if isinstance(d, str) else list(d) for d in corpus]
        docs = [d for d in docs if d]
        if not docs:
            raise DataError("training corpus is empty")
        types: set[str] = set()
        for d in docs:
            types.update(d)
        vocab = sorted(types.union(RESERVED))
        index = {t: i for i, t in enumerate(vocab)}
        counts: dict[tuple[int, ...], dict[int, int]] = {}
        pad = order - 1
        for d in docs:
            ids = [index[BOS]] * pad + [index[t] for t in d] + [index[EOS]]
            for i in range(pad, len(ids)):
                tgt = ids[i]
                # count every context length 0..order-1; the shorter tables
                # back up generation when a full context was never observed
                for length in range(order):
                    ctx = tuple(ids[i - length:i])
                    bucket = counts.setdefault(ctx, {})
                    bucket[tgt] = bucket.get(tgt, 0) + 1
        return NGramModel(order=order, alpha=alpha, vocab=vocab, counts=counts)

    @property
    def vocab_size(self) -> int:
        return len(self.vocab)

    def token_id(self, token: str) -> int:
        return self.index.get(token, self.unk_id)

    # -- distributions ------------------------------------------------------

    def _stats(self, ctx: tuple[int, ...]) -> _ContextStats:
        cached = self._ctx_cache.get(ctx)
        if cached is not None:
            return cached
        bucket = self.counts.get(ctx)
        if bucket:
            items = sorted(bucket.items())
            ids = np.array([i for i, _ in items], dtype=np.int64)
            cnts = np.array([c for _, c in items], dtype=np.int64)
            total = int(cnts.sum())
        else:
            ids = np.empty(0, dtype=np.int64)
            cnts = np.empty(0, dtype=np.int64)
            total = 0
        V = self.vocab_size
        denom = total + self.alpha * V
        p_nz = (cnts + self.alpha) / denom
        p0 = self.alpha / denom
        h = -float(np.sum(p_nz * np.log(p_nz)))
        n_zero = V - len(ids)
        if n_zero:
            h -= n_zero * p0 * math.log(p0)
        stats = _ContextStats(ids, cnts, total, h)
        self._ctx_cache[ctx] = stats
        return stats

    def _context_of(self, ids: Sequence[int]) -> tuple[int, ...]:
        pad = self.order - 1
        padded = [self.bos_id] * pad + list(ids)
        return tuple(padded[-pad:])

    def _backoff_context(self, ctx: tuple[int, ...]) -> tuple[int, ...]:
        """Longest suffix of ctx with observed continuations (generation only;
        scoring never backs off). The empty context always has counts."""
        while ctx and ctx not in self.counts:
            ctx = ctx[1:]
        return ctx

    def logprob(self, ctx: tuple[int, ...], token_id: int) -> float:
        st = self._stats(ctx)
        denom = st.total + self.alpha * self.vocab_size
        pos = np.searchsorted(st.ids, token_id)
        cnt = 0
        if pos < len(st.ids) and st.ids[pos] == token_id:
            cnt = int(st.cnts[pos])
        return math.log((cnt + self.alpha) / denom)

    def rank(self, ctx: tuple[int, ...], token_id: int) -> int:
        """1-based rank by descending probability; ties break by vocab order."""
        st = self._stats(ctx)
        pos = np.searchsorted(st.ids, token_id)
        cnt = 0
        if pos < len(st.ids) and st.ids[pos] == token_id:
            cnt = int(st.cnts[pos])
        if cnt > 0:
            higher = int(np.count_nonzero(st.cnts > cnt))
            equal_before = int(np.count_nonzero(
                (st.cnts == cnt) & (st.ids < token_id)))
        else:
            higher = len(st.ids)
            nz_before = int(np.count_nonzero(st.ids < token_id))
            equal_before = token_id - nz_before
        return higher + equal_before + 1

    def entropy(self, ctx: tuple[int, ...]) -> float:
        return self._stats(ctx).entropy

    def dense_probs(self, ctx: tuple[int, ...]) -> np.ndarray:
        """Full smoothed next-token distribution (sums to 1)."""
        st = self._stats(ctx)
        denom = st.total + self.alpha * self.vocab_size
        probs = np.full(self.vocab_size, self.alpha / denom)
        if len(st.ids):
            probs[st.ids] = (st.cnts + self.alpha) / denom
        return probs

    # -- operations ----------------------------------------------------------

    def score(self, text: str) -> list[TokenScore]:
        """Score every token after the first (order - 1) context positions.
        Out-of-vocabulary tokens score as <unk>. Texts shorter than the model
        order yield an empty sequence."""
        tokens = tokenize(text)
        if len(tokens) < self.order:
            logger.warning("text shorter than model order (%d tokens); no scores",
                           len(tokens))
            return []
        ids = [self.token_id(t) for t in tokens]
        pad = self.order - 1
        out = []
        for i in range(pad, len(ids)):
            ctx = tuple(ids[i - pad:i])
            tid = ids[i]
            out.append(TokenScore(
                token=tokens[i],
                logprob=self.logprob(ctx, tid),
                rank=self.rank(ctx, tid),
                entropy=self.entropy(ctx),
            ))
        return out

    def generate(self, prompt: str, max_tokens: int = 120,
                 temperature: float = DEFAULT_TEMPERATURE,
                 top_p: float = DEFAULT_TOP_P, seed: int = 0,
                 step_hook: StepHook | None = None, min_tokens: int = 0,
                 logit_bias: LogitBias | None = None) -> str:
        """Nucleus-sampled continuation of the prompt (continuation only).

        Deterministic given (model, prompt, seed, hook). The step hook may
        rewrite the just-sampled token and/or append extra tokens; everything
        it returns enters the sampling context before the next step.
        """
        if temperature <= 0:
            raise ValueError("temperature must be > 0")
        if not (0 < top_p <= 1):
            raise ValueError("top_p must be in (0, 1]")
        prompt_tokens = tokenize(prompt)
        prompt_ids = [self.token_id(t) for t in prompt_tokens]
        if prompt_tokens and all(i == self.unk_id for i in prompt_ids):
            logger.warning("prompt entirely out-of-vocabulary; generating from "
                           "<bos> context")
            prompt_ids = []
        rng = rng_from("toylm-generate", seed)
        ctx_ids = list(prompt_ids)
        out_tokens: list[str] = []
        for step in range(max_tokens):
            full_ctx = self._context_of(ctx_ids)
            probs = self.dense_probs(self._backoff_context(full_ctx))
            if logit_bias is not None:
                bias = logit_bias(full_ctx)  # seeding needs the true context
                # all-zero bias must not perturb floats (byte-identity at δ=0)
                if bias is not None and np.any(bias):
                    with np.errstate(divide="ignore"):
                        logits = np.log(probs) + bias
                    logits -= logits.max()
                    probs = np.exp(logits)
                    probs /= probs.sum()
            probs[self.bos_id] = 0.0
            if step < min_tokens:
                probs[self.eos_id] = 0.0
            tid = _nucleus_sample(probs, temperature, top_p, rng)
            if tid == self.eos_id:
                break
            token = self.vocab[tid]
            emitted: list[str] = [token]
            if step_hook is not None:
                result = step_hook(token)
                if result is None:
                    pass
                elif isinstance(result, str):
                    emitted = [result]
                else:
                    emitted = list(result)
            for t in emitted:
                out_tokens.append(t)
                ctx_ids.append(self.token_id(t))
        return " ".join(out_tokens)

    def mask_fill(self, text: str, spans: Sequence[tuple[int, int]],
                  seed: int = 0) -> str:
        """Resample the tokens inside disjoint [start, end) token spans,
        conditioning on left context (temperature 1, no nucleus truncation).
        Span token-counts are preserved. Tokens outside spans are untouched.
        """
        tokens = tokenize(text)
        spans = sorted(tuple(s) for s in spans)
        prev_end = -1
        for start, end in spans:
            if start < 0 or end > len(tokens) or start >= end:
                raise ValueError(f"span {(start, end)} out of range")
            if start < prev_end:
                raise ValueError("spans overlap")
            prev_end = end
        if not spans:
            return text
        rng = rng_from("toylm-maskfill", seed)
        new_tokens = list(tokens)
        for start, end in spans:
            for i in range(start, end):
                ctx_ids = [self.token_id(t) for t in new_tokens[:i]]
                ctx = self._backoff_context(self._context_of(ctx_ids))
                probs = self.dense_probs(ctx)
                probs[self.bos_id] = 0.0
                probs[self.eos_id] = 0.0
                tid = _nucleus_sample(probs, 1.0, 1.0, rng)
                new_tokens[i] = self.vocab[tid]
        return " ".join(new_tokens)

    # -- persistence ---------------------------------------------------------

    def save(self, path: str | Path) -> None:
        """Line-based count dump; reloading reproduces scores to the last bit."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="\n") as fh:
            fh.write("detstress-ngram v1\n")
            fh.write(f"order\t{self.order}\n")
            fh.write(f"alpha\t{self.alpha!r}\n")
            fh.write(f"vocab\t{self.vocab_size}\n")
            for t in self.vocab:
                fh.write(t + "\n")
            entries = []
            for ctx, bucket in self.counts.items():
                for tid, cnt in bucket.items():
                    entries.append((ctx, tid, cnt))
            entries.sort()
            fh.write(f"counts\t{len(entries)}\n")
            for ctx, tid, cnt in entries:
                ctx_str = " ".join(str(c) for c in ctx)
                fh.write(f"{ctx_str}\t{tid}\t{cnt}\n")

    @staticmethod
    def load(path: str | Path) -> "NGramModel":
        path = Path(path)
        with path.open("r", encoding="utf-8") as fh:
            header = fh.readline().rstrip("\n")
            if header != "detstress-ngram v1":
                raise DataError(f"{path}: unrecognized model dump header {header!r}")
            order = int(fh.readline().split("\t")[1])
            alpha = float(fh.readline().split("\t")[1])
            vsize = int(fh.readline().split("\t")[1])
            vocab = [fh.readline().rstrip("\n") for _ in range(vsize)]
            n_entries = int(fh.readline().split("\t")[1])
            counts: dict[tuple[int, ...], dict[int, int]] = {}
            for _ in range(n_entries):
                ctx_str, tid, cnt = fh.readline().rstrip("\n").split("\t")
                ctx = tuple(int(c) for c in ctx_str.split())
                counts.setdefault(ctx, {})[int(tid)] = int(cnt)
        return NGramModel(order=order, alpha=alpha, vocab=vocab, counts=counts)


def _nucleus_sample(probs: np.ndarray, temperature: float, top_p: float,
                    rng: np.random.Generator) -> int:
    """Temperature + top-p sampling, consuming exactly one uniform draw.

    Ordering is by descending probability with ties broken by vocabulary
    index, so results are independent of how the distribution was produced.
    """
    if temperature != 1.0:
        with np.errstate(divide="ignore"):
            logits = np.log(probs) / temperature
        logits -= logits.max()
        probs = np.exp(logits)
        probs /= probs.sum()
    else:
        probs = probs / probs.sum()
    order = np.argsort(-probs, kind="stable")
    sorted_p = probs[order]
    cdf = np.cumsum(sorted_p)
    cut = int(np.searchsorted(cdf, top_p, side="left"))
    cut = min(cut, len(cdf) - 1)
    kept = sorted_p[:cut + 1]
    kept_cdf = np.cumsum(kept)
    u = rng.random() * kept_cdf[-1]
    idx = int(np.searchsorted(kept_cdf, u, side="right"))
    idx = min(idx, cut)
    return int(order[idx])


def train(corpus: Iterable[Sequence[str] | str], order: int = DEFAULT_ORDER,
          alpha: float = DEFAULT_ALPHA) -> NGramModel:
    return NGramModel.train(corpus, order=order, alpha=alpha)
