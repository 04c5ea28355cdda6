"""Bridge-protocol conformance: response-shape validation and transcript
replay.

The bundled transcript (data/conformance_transcript.jsonl) was recorded
against the builtin backend served over the wire. Replaying it against any
backend checks protocol shape only: version, id echoing, the ok/result/error
contract, and kind-specific result schemas. Values are free to differ, so an
echo-model bridge passes with no model downloads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Sequence

from .backend import Backend, BackendRequest, PROTOCOL_VERSION

_NUMBER = (int, float)


def _check_score(result: dict) -> list[str]:
    problems = []
    tokens = result.get("tokens")
    if not isinstance(tokens, list):
        return ["score result must carry a 'tokens' list"]
    for i, t in enumerate(tokens):
        if not isinstance(t, dict):
            problems.append(f"tokens[{i}] is not an object")
            continue
        if not isinstance(t.get("logprob"), _NUMBER):
            problems.append(f"tokens[{i}].logprob missing or not a number")
        if not isinstance(t.get("rank"), int):
            problems.append(f"tokens[{i}].rank missing or not an integer")
        if not isinstance(t.get("entropy"), _NUMBER):
            problems.append(f"tokens[{i}].entropy missing or not a number")
    return problems


def _check_text(result: dict) -> list[str]:
    if not isinstance(result.get("text"), str):
        return ["result must carry a 'text' string"]
    return []


def _check_synonyms(result: dict) -> list[str]:
    syns = result.get("synonyms")
    if not isinstance(syns, list) or not all(isinstance(s, str) for s in syns):
        return ["result must carry a 'synonyms' list of strings"]
    return []


RESULT_CHECKS = {
    "score": _check_score,
    "generate": _check_text,
    "mask_fill": _check_text,
    "paraphrase": _check_text,
    "synonyms": _check_synonyms,
}


def check_response(kind: str, request_id: str, response,
                   expect_ok: bool | None = None) -> list[str]:
    """Shape problems for one response; empty list means conformant."""
    problems = []
    if response.id != request_id:
        problems.append(f"response id {response.id!r} does not echo "
                        f"{request_id!r}")
    if not isinstance(response.ok, bool):
        problems.append("'ok' is not a boolean")
        return problems
    if (response.result is None) == (response.ok):
        problems.append("exactly one of result/error must be present "
                        f"(ok={response.ok})")
    if response.ok:
        checker = RESULT_CHECKS.get(kind)
        if checker and isinstance(response.result, dict):
            problems.extend(checker(response.result))
        elif checker:
            problems.append("result is not an object")
    else:
        if not isinstance(response.error, str) or not response.error:
            problems.append("error responses must carry a diagnostic string")
    if expect_ok is not None and response.ok != expect_ok:
        problems.append(f"expected ok={expect_ok}, got ok={response.ok}")
    return problems


@dataclass(frozen=True)
class TranscriptEntry:
    request: BackendRequest
    expect_ok: bool


def default_transcript_requests() -> list[TranscriptEntry]:
    """One request per kind plus protocol-abuse cases."""
    text = ("The gentle breeze faded quietly. The captain waited near the "
            "old lighthouse. The merchant bought the golden lantern.")
    mk = BackendRequest
    return [
        TranscriptEntry(mk("score", {"text": text, "options": {}},
                           id="t-score-1"), True),
        TranscriptEntry(mk("generate", {
            "prompt": "The gentle breeze", "max_tokens": 24,
            "temperature": 1.0, "top_p": 0.96, "seed": 7, "min_tokens": 4,
            "options": {}}, id="t-generate-1"), True),
        TranscriptEntry(mk("mask_fill", {
            "text": text, "spans": [[2, 4], [8, 10]], "seed": 3,
            "options": {}}, id="t-maskfill-1"), True),
        TranscriptEntry(mk("paraphrase", {
            "text": text, "lex_diversity": 60, "order_diversity": 20,
            "seed": 5, "options": {}}, id="t-paraphrase-1"), True),
        TranscriptEntry(mk("synonyms", {
            "word": "golden", "context": "The merchant bought the golden "
            "lantern.", "options": {}}, id="t-synonyms-1"), True),
        TranscriptEntry(mk("unknown_kind", {"options": {}},
                           id="t-bad-kind"), False),
        TranscriptEntry(mk("score", {"options": {}},
                           id="t-bad-payload"), False),
    ]


def record_transcript(backend: Backend, path: str | Path,
                      entries: Sequence[TranscriptEntry] | None = None) -> None:
    entries = entries if entries is not None else default_transcript_requests()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        for entry in entries:
            response = backend.dispatch(entry.request)
            rec = {
                "request": {"v": PROTOCOL_VERSION, "id": entry.request.id,
                            "kind": entry.request.kind,
                            "payload": entry.request.payload},
                "expect_ok": entry.expect_ok,
                "recorded_response": {
                    "v": PROTOCOL_VERSION, "id": response.id,
                    "ok": response.ok, "result": response.result,
                    "error": response.error},
            }
            fh.write(json.dumps(rec, ensure_ascii=False) + "\n")


def load_transcript(path: str | Path) -> list[TranscriptEntry]:
    entries = []
    with Path(path).open("r", encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            rec = json.loads(line)
            req = rec["request"]
            entries.append(TranscriptEntry(
                request=BackendRequest(kind=req["kind"],
                                       payload=req["payload"], id=req["id"]),
                expect_ok=rec["expect_ok"]))
    return entries


def bundled_transcript() -> list[TranscriptEntry]:
    ref = resources.files("detstress").joinpath(
        "data/conformance_transcript.jsonl")
    with resources.as_file(ref) as path:
        return load_transcript(path)


def replay_transcript(backend: Backend,
                      entries: Sequence[TranscriptEntry] | None = None
                      ) -> dict[str, list[str]]:
    """Replay entries against a backend; returns {request id: problems} for
    every non-conformant exchange (empty dict = pass)."""
    entries = entries if entries is not None else bundled_transcript()
    failures: dict[str, list[str]] = {}
    for entry in entries:
        try:
            response = backend.dispatch(entry.request)
        except Exception as exc:
            failures[entry.request.id] = [f"dispatch raised: {exc}"]
            continue
        problems = check_response(entry.request.kind, entry.request.id,
                                  response, expect_ok=entry.expect_ok)
        if problems:
            failures[entry.request.id] = problems
    return failures


def main(argv: Sequence[str] | None = None) -> int:
    """Replay the bundled transcript against a bridge command."""
    import argparse

    from .backend import ProcessBackend

    parser = argparse.ArgumentParser(
        prog="detstress-conformance",
        description="Replay the bundled protocol transcript against a bridge")
    parser.add_argument("--cmd", required=True,
                        help="bridge command line to spawn")
    parser.add_argument("--timeout", type=float, default=30.0)
    args = parser.parse_args(argv)
    import shlex
    with ProcessBackend(shlex.split(args.cmd), timeout=args.timeout) as backend:
        failures = replay_transcript(backend)
    entries = bundled_transcript()
    for entry in entries:
        status = "FAIL" if entry.request.id in failures else "ok"
        print(f"[{status}] {entry.request.id} ({entry.request.kind})")
        for problem in failures.get(entry.request.id, []):
            print(f"       {problem}")
    print(f"{len(entries) - len(failures)}/{len(entries)} conformant")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
