"""JSON documents for sets and construction traces.

Integers are always stored as decimal strings so nothing is lost when
values outgrow 64 bits. A trace names its set by the SHA-256 of the set
document's bytes.
"""

from __future__ import annotations

import hashlib
import json
import re

from .core import IntegerSet, InvalidArgumentError
from .theorem1 import ConstructionTrace, GrowthFunction

SET_KIND = "integer-set"
_DECIMAL = re.compile(r"-?(0|[1-9][0-9]*)")


class DocumentError(InvalidArgumentError):
    pass


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=1, sort_keys=True, ensure_ascii=False) + "\n"


def _ints(values) -> list[str]:
    return [str(v) for v in values]


def _parse_int(s) -> int:
    if not isinstance(s, str) or not _DECIMAL.fullmatch(s):
        raise DocumentError(f"not a decimal integer string: {s!r}")
    return int(s)


def _parse_ints(values, strict_increasing: bool = True) -> list[int]:
    if not isinstance(values, list):
        raise DocumentError("expected a list of decimal strings")
    out = [_parse_int(v) for v in values]
    if strict_increasing and any(a >= b for a, b in zip(out, out[1:])):
        raise DocumentError("elements are not strictly increasing")
    return out


def serialize_set(S: IntegerSet, meta: dict | None = None) -> str:
    return _dump({"kind": SET_KIND, "elements": _ints(S), "meta": meta or {}})


def parse_set(text: str) -> tuple[IntegerSet, dict]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("kind") != SET_KIND:
        raise DocumentError(f"not an {SET_KIND} document")
    meta = doc.get("meta", {})
    if not isinstance(meta, dict):
        raise DocumentError("meta must be an object")
    return IntegerSet(_parse_ints(doc.get("elements"))), meta


def content_hash(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def parse_json(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON: {exc}") from None
    if not isinstance(doc, dict) or "kind" not in doc:
        raise DocumentError("not a pdsets document")
    return doc


def serialize_trace(kind: str, set_text: str, body: dict) -> str:
    return _dump({"kind": kind, "set_sha256": content_hash(set_text), **body})


def theorem1_trace_body(trace: ConstructionTrace) -> dict:
    return {
        "source": _ints(trace.source_sidon),
        "g": trace.g.spec,
        "horizon": str(trace.horizon),
        "b0": _ints(trace.b0),
        "removed": {f"c{i + 1}": _ints(R) for i, R in enumerate(trace.removed)},
        "steps": [[k, took] for k, took in trace.steps],
    }


def load_theorem1_trace(doc: dict, final_set: IntegerSet) -> ConstructionTrace:
    if doc.get("kind") != "theorem1-trace":
        raise DocumentError("expected a theorem1-trace document")
    try:
        removed = tuple(IntegerSet(_parse_ints(doc["removed"][f"c{i}"])) for i in range(1, 5))
        return ConstructionTrace(
            source_sidon=IntegerSet(_parse_ints(doc["source"])),
            g=GrowthFunction.from_spec(doc["g"]),
            horizon=_parse_int(doc["horizon"]),
            b0=IntegerSet(_parse_ints(doc["b0"])),
            removed=removed,
            steps=tuple((int(k), bool(t)) for k, t in doc["steps"]),
            final_set=final_set,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"malformed theorem1 trace: {exc}") from None
