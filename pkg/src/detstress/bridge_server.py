"""Serve the builtin backend over the bridge protocol on stdin/stdout.

Reference implementation of the server side of the wire contract; used to
record the conformance transcript and to exercise the process-backend client
without any external dependency:

    python -m detstress.bridge_server --model dump.txt
    python -m detstress.bridge_server --train corpus.jsonl
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence, TextIO

from .backend import Backend, BackendRequest, BuiltinBackend, PROTOCOL_VERSION
from .corpus import Split, load_dataset
from .toylm import NGramModel


def serve(backend: Backend, stdin: TextIO, stdout: TextIO) -> None:
    """Answer line-delimited requests until end-of-input. Malformed lines are
    answered with ok=false instead of crashing the process."""
    for line in stdin:
        if not line.strip():
            continue
        try:
            data = json.loads(line)
            req_id = data.get("id")
            request = BackendRequest(kind=str(data.get("kind")),
                                     payload=data.get("payload") or {},
                                     id=str(req_id))
        except (json.JSONDecodeError, AttributeError) as exc:
            _write(stdout, {"v": PROTOCOL_VERSION, "id": None, "ok": False,
                            "error": f"malformed request line: {exc}"})
            continue
        response = backend.dispatch(request)
        wire = {"v": PROTOCOL_VERSION, "id": response.id, "ok": response.ok}
        if response.ok:
            wire["result"] = response.result
        else:
            wire["error"] = response.error
        _write(stdout, wire)


def _write(stdout: TextIO, obj: dict) -> None:
    stdout.write(json.dumps(obj, ensure_ascii=False) + "\n")
    stdout.flush()


def main(argv: Sequence[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="detstress-bridge-server",
        description="Expose the builtin n-gram backend over stdio")
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--model", help="model dump to load")
    group.add_argument("--train", help="JSONL dataset to train from")
    parser.add_argument("--order", type=int, default=3)
    parser.add_argument("--alpha", type=float, default=None)
    args = parser.parse_args(argv)

    if args.model:
        model = NGramModel.load(args.model)
    else:
        dataset = load_dataset(args.train, Split.TRAIN)
        kwargs = {"order": args.order}
        if args.alpha is not None:
            kwargs["alpha"] = args.alpha
        model = NGramModel.train([d.text for d in dataset], **kwargs)
    serve(BuiltinBackend(model), sys.stdin, sys.stdout)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
