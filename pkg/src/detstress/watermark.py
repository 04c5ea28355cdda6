"""Decoding-time green-list watermark: generation bias and z-score detection.

At each step a pseudo-random vocabulary partition (green fraction gamma) is
derived from hash(key, seeding context); delta is added to green logits
before temperature/top-p. Detection counts green tokens and applies the
one-proportion z-test  z = (g - gamma*T) / sqrt(T*gamma*(1-gamma)).

The hash is a fixed splitmix64 chain, stable across platforms; cryptographic
strength is a non-goal. Keys come from flags or the environment and are
never written into reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import DataError
from .toylm import NGramModel, UNK
from .util import MASK64, mix64, tokenize

DEFAULT_GAMMA = 0.25
DEFAULT_DELTA = 4.0
DEFAULT_Z_THRESHOLD = 4.0
DEFAULT_KEY = 15485863

_GREEN_SALT = 0xA5A5_5A5A_0F0F_F0F0


class Seeding(str, Enum):
    # prev_token: partition seeded by the previous token only; the
    # cross-implementation-stable default.
    PREV_TOKEN = "prev_token"
    # self_hash: seeded by min-hash over a window that includes the candidate
    # token itself; membership is per-token Bernoulli(gamma) rather than an
    # exact floor(gamma*V) partition, which a per-candidate scheme requires.
    SELF_HASH = "self_hash"


@dataclass(frozen=True)
class WatermarkConfig:
    gamma: float = DEFAULT_GAMMA
    delta: float = DEFAULT_DELTA
    key: int = DEFAULT_KEY
    z_threshold: float = DEFAULT_Z_THRESHOLD
    seeding: Seeding = Seeding.PREV_TOKEN
    self_hash_window: int = 3  # previous tokens hashed alongside the candidate

    def __post_init__(self):
        if not (0.0 < self.gamma < 1.0):
            raise ValueError("gamma must be in (0, 1)")
        if self.delta < 0:
            raise ValueError("delta must be >= 0")


@dataclass(frozen=True)
class WatermarkVerdict:
    T: int
    green_count: int
    z: float
    detected: bool


def compute_z(green_count: int, T: int, gamma: float) -> float:
    return (green_count - gamma * T) / np.sqrt(T * gamma * (1.0 - gamma))


class Watermarker:
    """Binds a config to a vocabulary; caches per-seed green masks."""

    def __init__(self, config: WatermarkConfig, vocab: Sequence[str]):
        if int(config.gamma * len(vocab)) < 1:
            raise ValueError("gamma * vocabulary size must be >= 1")
        self.config = config
        self.vocab = list(vocab)
        self.index = {t: i for i, t in enumerate(self.vocab)}
        self.unk_id = self.index.get(UNK)
        self._green_masks: dict[int, np.ndarray] = {}
        self._mixed_ids = _mix64_array(
            np.arange(1, len(vocab) + 1, dtype=np.uint64))
        self._key64 = config.key & MASK64

    # -- partitions ----------------------------------------------------------

    def _partition_seed(self, prev_id: int) -> int:
        return mix64(self._key64 ^ mix64(prev_id + 1))

    def green_mask_prev(self, prev_id: int) -> np.ndarray:
        """Deterministic permutation partition: first floor(gamma*V) indices."""
        seed = self._partition_seed(prev_id)
        mask = self._green_masks.get(seed)
        if mask is None:
            v = len(self.vocab)
            rng = np.random.Generator(np.random.PCG64(seed))
            green_ids = rng.permutation(v)[:int(self.config.gamma * v)]
            mask = np.zeros(v, dtype=bool)
            mask[green_ids] = True
            self._green_masks[seed] = mask
        return mask

    def green_mask_self(self, window_ids: Sequence[int]) -> np.ndarray:
        """Per-candidate membership under anchored min-hash seeding: the seed
        is the minimum over the window of (window-token hash * candidate
        hash), so every candidate draws its own coin."""
        if not window_ids:
            window_ids = [0]
        mins = None
        for wid in window_ids:
            prod = np.uint64(mix64(wid + 1)) * self._mixed_ids  # wraps mod 2^64
            mins = prod if mins is None else np.minimum(mins, prod)
        h = _mix64_array(mins ^ np.uint64(self._key64) ^ np.uint64(_GREEN_SALT))
        threshold = np.uint64(int(self.config.gamma * 2**64))
        return h < threshold

    def green_mask(self, context_ids: Sequence[int]) -> np.ndarray:
        if self.config.seeding is Seeding.PREV_TOKEN:
            return self.green_mask_prev(int(context_ids[-1]))
        window = list(context_ids)[-self.config.self_hash_window:]
        return self.green_mask_self(window)

    def is_green(self, token_id: int, context_ids: Sequence[int]) -> bool:
        if self.config.seeding is Seeding.PREV_TOKEN:
            return bool(self.green_mask_prev(int(context_ids[-1]))[token_id])
        window = list(context_ids)[-self.config.self_hash_window:] or [0]
        t_hash = mix64(token_id + 1)
        m = min((mix64(wid + 1) * t_hash) & MASK64 for wid in window)
        h = mix64((m ^ self._key64 ^ _GREEN_SALT) & MASK64)
        return h < int(self.config.gamma * 2**64)

    # -- generation ----------------------------------------------------------

    def logit_bias(self, ctx: tuple[int, ...]) -> np.ndarray:
        return self.config.delta * self.green_mask(ctx).astype(np.float64)


def wm_generate(model: NGramModel, prompt: str, config: WatermarkConfig,
                max_tokens: int = 120, temperature: float = 1.0,
                top_p: float = 0.96, seed: int = 0,
                min_tokens: int = 0) -> str:
    """Generate with the green-list bias. delta=0 is byte-identical to plain
    generation under the same seed."""
    wm = Watermarker(config, model.vocab)
    bias = wm.logit_bias if config.delta > 0 else None
    return model.generate(prompt, max_tokens=max_tokens,
                          temperature=temperature, top_p=top_p, seed=seed,
                          min_tokens=min_tokens, logit_bias=bias)


# ---------------------------------------------------------------------------
# Detection (batch = fold of the streaming update)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DetectorState:
    """Serializable incremental detection state."""
    window: tuple[int, ...] = ()
    T: int = 0
    green_count: int = 0

    def to_dict(self) -> dict:
        return {"window": list(self.window), "T": self.T,
                "green_count": self.green_count}

    @staticmethod
    def from_dict(data: dict) -> "DetectorState":
        return DetectorState(window=tuple(data["window"]), T=data["T"],
                             green_count=data["green_count"])


def wm_score_stream(state: DetectorState, token_id: int, wm: Watermarker
                    ) -> DetectorState:
    """Fold one token into the detector state. The first token only seeds the
    window (nothing is scored without a preceding context)."""
    window_len = max(1, wm.config.self_hash_window)
    if not state.window:
        return DetectorState(window=(token_id,), T=state.T,
                             green_count=state.green_count)
    green = wm.is_green(token_id, state.window)
    window = (state.window + (token_id,))[-window_len:]
    return DetectorState(window=window, T=state.T + 1,
                         green_count=state.green_count + int(green))


def verdict_from_state(state: DetectorState, config: WatermarkConfig
                       ) -> WatermarkVerdict:
    if state.T < 2:
        raise DataError("watermark verdict undefined for T < 2")
    z = float(compute_z(state.green_count, state.T, config.gamma))
    return WatermarkVerdict(T=state.T, green_count=state.green_count, z=z,
                            detected=z >= config.z_threshold)


def wm_detect(text: str, config: WatermarkConfig,
              vocab: Sequence[str]) -> WatermarkVerdict:
    """Tokenize with the generator's vocabulary (OOV -> <unk>) and z-test the
    green-token count."""
    wm = Watermarker(config, vocab)
    tokens = tokenize(text)
    unk = wm.unk_id
    if unk is None:
        raise DataError("vocabulary must contain the <unk> token")
    state = DetectorState()
    for t in tokens:
        state = wm_score_stream(state, wm.index.get(t, unk), wm)
    return verdict_from_state(state, config)


def _mix64_array(x: np.ndarray) -> np.ndarray:
    x = x.astype(np.uint64)
    x = (x + np.uint64(0x9E3779B97F4A7C15))
    x = (x ^ (x >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    x = (x ^ (x >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return x ^ (x >> np.uint64(31))
