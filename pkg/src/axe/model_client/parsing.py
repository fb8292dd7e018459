"""Lenient parsers for pruner and extractor responses.

Small models wrap their JSON in prose, code fences or doubled braces.
The prune parser takes the first JSON array of integers it can find; the
extraction parser takes the last top-level JSON object.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Any, Iterable

from axe.errors import Unparseable


@dataclass(frozen=True)
class PruneDecision:
    kept_indices: tuple[int, ...] = ()
    # batches whose answer was unparseable and kept whole
    fail_open: int = field(default=0, compare=False)

    @classmethod
    def of(cls, indices: Iterable[int], offered: int | None = None, fail_open: int = 0) -> PruneDecision:
        kept = {i for i in indices if offered is None or 0 <= i < offered}
        return cls(tuple(sorted(kept)), fail_open)


@dataclass
class ExtractorOutput:
    reasoning: str = ""
    payload: Any = field(default_factory=dict)


def _balanced_end(raw: str, start: int, open_ch: str, close_ch: str) -> int | None:
    """Index just past the bracket that closes ``raw[start]``, honouring strings."""
    depth = 0
    in_string = False
    escaped = False
    for pos in range(start, len(raw)):
        ch = raw[pos]
        if in_string:
            if escaped:
                escaped = False
            elif ch == "\\":
                escaped = True
            elif ch == '"':
                in_string = False
        elif ch == '"':
            in_string = True
        elif ch == open_ch:
            depth += 1
        elif ch == close_ch:
            depth -= 1
            if depth == 0:
                return pos + 1
    return None


def _json_spans(raw: str, open_ch: str, close_ch: str, kind: type):
    """Yield ``(start, end, value)`` for each top-level parseable JSON value of ``kind``."""
    pos = raw.find(open_ch)
    while pos >= 0:
        end = _balanced_end(raw, pos, open_ch, close_ch)
        value = None
        if end is not None:
            try:
                value = json.loads(raw[pos:end])
            except ValueError:
                value = None
        if isinstance(value, kind):
            yield pos, end, value
            pos = raw.find(open_ch, end)
        else:
            pos = raw.find(open_ch, pos + 1)


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def parse_prune(raw: str, offered: int) -> PruneDecision:
    for _, _, value in _json_spans(raw, "[", "]", list):
        if all(_is_int(x) for x in value):
            return PruneDecision.of(value, offered)
    raise Unparseable(f"no JSON integer array in pruner output: {raw[:80]!r}")


_REASONING = re.compile(r"^\s*(?:\*\*)?REASONING(?:\*\*)?\s*:\s*", re.I)


def _clean_reasoning(text: str) -> str:
    text = _REASONING.sub("", text).strip()
    text = re.sub(r"```(?:json)?\s*$", "", text).strip()
    if len(text) >= 2 and text[0] == text[-1] == '"':
        text = text[1:-1]
    return text.strip()


def _as_value(v) -> str | None:
    if v is None or isinstance(v, str):
        return v
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (int, float)):
        return str(v)
    if isinstance(v, list):
        parts = [_as_value(x) for x in v]
        parts = [p for p in parts if p]
        return ", ".join(parts) if parts else None
    return json.dumps(v, ensure_ascii=False)


def parse_extraction(raw: str, schema_keys: list[str] | None = None) -> ExtractorOutput:
    """Split the optional ``REASONING:`` preamble from the last JSON object.

    With ``schema_keys`` the payload is projected onto exactly those keys:
    absent keys become null, extra keys are dropped and non-string values
    are coerced to strings.
    """
    spans = list(_json_spans(raw, "{", "}", dict))
    if not spans:
        raise Unparseable(f"no JSON object in extractor output: {raw[:80]!r}")
    start, _, payload = spans[-1]
    reasoning = _clean_reasoning(raw[:start])
    if schema_keys is not None:
        payload = {k: _as_value(payload.get(k)) for k in schema_keys}
    return ExtractorOutput(reasoning, payload)
