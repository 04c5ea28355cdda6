"""Uniform model interface: score / generate / mask_fill / paraphrase /
synonyms, with two implementations.

``BuiltinBackend`` runs the bundled n-gram model in-process and is the
reference semantics. ``ProcessBackend`` talks bridge protocol v1 to a child
process: UTF-8 JSON lines over stdin/stdout, request fields
``{v: 1, id, kind, payload}``, response fields ``{v: 1, id, ok,
result | error}``; strictly one outstanding request per connection; unknown
fields must be ignored. Payload schemas are documented in PROTOCOL.md.
"""

from __future__ import annotations

import json
import queue
import subprocess
import threading
import uuid
from dataclasses import dataclass
from typing import Sequence

from .errors import BackendError, ProtocolError
from .toylm import NGramModel, TokenScore

PROTOCOL_VERSION = 1
KINDS = ("score", "generate", "mask_fill", "paraphrase", "synonyms")
DEFAULT_TIMEOUT = 120.0


@dataclass(frozen=True)
class BackendRequest:
    kind: str
    payload: dict
    id: str = ""

    def with_id(self) -> "BackendRequest":
        if self.id:
            return self
        return BackendRequest(kind=self.kind, payload=self.payload,
                              id=uuid.uuid4().hex)


@dataclass(frozen=True)
class BackendResponse:
    id: str
    ok: bool
    result: dict | None = None
    error: str | None = None


class Backend:
    """Base class: typed helpers expressed over dispatch()."""

    def dispatch(self, request: BackendRequest) -> BackendResponse:
        raise NotImplementedError

    def close(self) -> None:
        pass

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

    # -- typed helpers -------------------------------------------------------

    def _call(self, kind: str, payload: dict) -> dict:
        response = self.dispatch(BackendRequest(kind=kind, payload=payload))
        if not response.ok:
            raise BackendError(f"{kind} failed: {response.error}")
        return response.result or {}

    def score(self, text: str, **options) -> list[TokenScore]:
        result = self._call("score", {"text": text, "options": options})
        return [TokenScore(token=t.get("token", ""), logprob=t["logprob"],
                           rank=t["rank"], entropy=t["entropy"])
                for t in result["tokens"]]

    def generate(self, prompt: str, max_tokens: int = 120,
                 temperature: float = 1.0, top_p: float = 0.96,
                 seed: int = 0, min_tokens: int = 0, **options) -> str:
        result = self._call("generate", {
            "prompt": prompt, "max_tokens": max_tokens,
            "temperature": temperature, "top_p": top_p, "seed": seed,
            "min_tokens": min_tokens, "options": options})
        return result["text"]

    def mask_fill(self, text: str, spans: Sequence[tuple[int, int]],
                  seed: int = 0, **options) -> str:
        result = self._call("mask_fill", {
            "text": text, "spans": [list(s) for s in spans], "seed": seed,
            "options": options})
        return result["text"]

    def paraphrase(self, text: str, lex_diversity: int | None = None,
                   order_diversity: int | None = None, seed: int = 0,
                   **options) -> str:
        result = self._call("paraphrase", {
            "text": text, "lex_diversity": lex_diversity,
            "order_diversity": order_diversity, "seed": seed,
            "options": options})
        return result["text"]

    def synonyms(self, word: str, context: str = "", **options) -> list[str]:
        result = self._call("synonyms", {
            "word": word, "context": context, "options": options})
        return list(result["synonyms"])


class BuiltinBackend(Backend):
    """In-process backend over the bundled n-gram model.

    dispatch() and the typed helpers share one code path, so protocol access
    is transparently identical to direct model calls.
    """

    _SCORE_CACHE_MAX = 8192

    def __init__(self, model: NGramModel, dictionary=None):
        self.model = model
        self._dictionary = dictionary
        self._score_cache: dict[str, list[dict]] = {}

    @property
    def dictionary(self):
        if self._dictionary is None:
            from .attacks.para import SynonymDictionary
            self._dictionary = SynonymDictionary.bundled()
        return self._dictionary

    def dispatch(self, request: BackendRequest) -> BackendResponse:
        request = request.with_id()
        try:
            result = self._handle(request.kind, request.payload)
        except BackendError:
            raise
        except Exception as exc:
            return BackendResponse(id=request.id, ok=False, error=str(exc))
        return BackendResponse(id=request.id, ok=True, result=result)

    def _handle(self, kind: str, payload: dict) -> dict:
        if kind == "score":
            text = payload["text"]
            tokens = self._score_cache.get(text)
            if tokens is None:
                scores = self.model.score(text)
                tokens = [{"token": s.token, "logprob": s.logprob,
                           "rank": s.rank, "entropy": s.entropy}
                          for s in scores]
                if len(self._score_cache) >= self._SCORE_CACHE_MAX:
                    self._score_cache.clear()
                self._score_cache[text] = tokens
            return {"tokens": tokens}
        if kind == "generate":
            text = self.model.generate(
                payload["prompt"],
                max_tokens=int(payload.get("max_tokens", 120)),
                temperature=float(payload.get("temperature", 1.0)),
                top_p=float(payload.get("top_p", 0.96)),
                seed=int(payload.get("seed", 0)),
                min_tokens=int(payload.get("min_tokens", 0)))
            return {"text": text}
        if kind == "mask_fill":
            spans = [tuple(s) for s in payload["spans"]]
            return {"text": self.model.mask_fill(
                payload["text"], spans, seed=int(payload.get("seed", 0)))}
        if kind == "paraphrase":
            from .attacks.para import toy_paraphrase
            return {"text": toy_paraphrase(
                payload["text"], self.dictionary,
                lex_diversity=payload.get("lex_diversity"),
                order_diversity=payload.get("order_diversity"),
                seed=int(payload.get("seed", 0)))}
        if kind == "synonyms":
            syns = self.dictionary.lookup(payload["word"])
            return {"synonyms": syns}
        raise ValueError(f"unknown request kind {kind!r}")


class ProcessBackend(Backend):
    """Bridge-protocol client over a child process's stdin/stdout.

    Single connection, strictly serial; open several instances for
    parallel throughput. Not shareable across threads.
    """

    def __init__(self, cmd: Sequence[str], timeout: float = DEFAULT_TIMEOUT):
        self.cmd = list(cmd)
        self.timeout = timeout
        try:
            self._proc = subprocess.Popen(
                self.cmd, stdin=subprocess.PIPE, stdout=subprocess.PIPE,
                text=True, encoding="utf-8", bufsize=1)
        except OSError as exc:
            raise BackendError(f"cannot start backend {self.cmd}: {exc}") from exc
        self._lines: queue.Queue[str | None] = queue.Queue()
        self._reader = threading.Thread(target=self._read_loop, daemon=True)
        self._reader.start()

    def _read_loop(self) -> None:
        try:
            for line in self._proc.stdout:
                self._lines.put(line)
        finally:
            self._lines.put(None)

    def dispatch(self, request: BackendRequest) -> BackendResponse:
        request = request.with_id()
        if self._proc.poll() is not None:
            raise BackendError("backend process has exited")
        wire = {"v": PROTOCOL_VERSION, "id": request.id, "kind": request.kind,
                "payload": request.payload}
        try:
            self._proc.stdin.write(json.dumps(wire, ensure_ascii=False) + "\n")
            self._proc.stdin.flush()
        except (BrokenPipeError, OSError) as exc:
            raise BackendError(f"backend transport failure: {exc}") from exc
        try:
            line = self._lines.get(timeout=self.timeout)
        except queue.Empty:
            raise BackendError(
                f"backend timed out after {self.timeout}s") from None
        if line is None:
            raise BackendError("backend closed the connection")
        try:
            data = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ProtocolError(f"backend sent malformed JSON: {exc}") from exc
        if data.get("id") != request.id:
            raise ProtocolError(
                f"response id {data.get('id')!r} does not echo request id "
                f"{request.id!r}")
        if not isinstance(data.get("ok"), bool):
            raise ProtocolError("response missing boolean 'ok'")
        return BackendResponse(id=data["id"], ok=data["ok"],
                               result=data.get("result"),
                               error=data.get("error"))

    def close(self) -> None:
        if self._proc.poll() is None:
            try:
                self._proc.stdin.close()
            except OSError:
                pass
            try:
                self._proc.wait(timeout=5)
            except subprocess.TimeoutExpired:
                self._proc.kill()
                self._proc.wait()


def open_backend(model: NGramModel | None = None,
                 backend_cmd: Sequence[str] | None = None,
                 timeout: float = DEFAULT_TIMEOUT) -> Backend:
    """builtin when no command is given, otherwise a bridge client."""
    if backend_cmd:
        return ProcessBackend(backend_cmd, timeout=timeout)
    if model is None:
        raise BackendError("builtin backend requires a model")
    return BuiltinBackend(model)
