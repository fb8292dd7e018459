"""SQuAD-style answer normalization, token-level F1 and exact match."""

from __future__ import annotations

import re
import string
from collections import Counter
from typing import Sequence

_ARTICLES = re.compile(r"\b(a|an|the)\b")
_PUNCT = set(string.punctuation)
NULL_MARKERS = ("", "<NULL>")


def normalize_answer(s: str) -> str:
    """Lower text and remove punctuation, articles and extra whitespace."""
    s = s.lower()
    s = "".join(ch for ch in s if ch not in _PUNCT)
    s = _ARTICLES.sub(" ", s)
    return " ".join(s.split())


def is_null(value: str | None) -> bool:
    return value is None or value.strip() in NULL_MARKERS


def _f1(prediction: str, gold: str) -> float:
    pred_toks = normalize_answer(prediction).split()
    gold_toks = normalize_answer(gold).split()
    if not pred_toks or not gold_toks:
        return float(pred_toks == gold_toks)
    common = Counter(pred_toks) & Counter(gold_toks)
    same = sum(common.values())
    if same == 0:
        return 0.0
    precision = same / len(pred_toks)
    recall = same / len(gold_toks)
    return 2 * precision * recall / (precision + recall)


def token_f1(prediction: str | None, golds: Sequence[str | None]) -> float:
    """Best bag-of-tokens F1 of ``prediction`` against any gold answer.

    A null prediction scores 1 only when some gold is itself null.
    """
    if not golds:
        raise ValueError("golds must be non-empty")
    if is_null(prediction):
        return 1.0 if any(is_null(g) for g in golds) else 0.0
    return max(0.0 if is_null(g) else _f1(prediction, g) for g in golds)


def exact_match(prediction: str | None, golds: Sequence[str | None]) -> int:
    if not golds:
        raise ValueError("golds must be non-empty")
    if is_null(prediction):
        return int(any(is_null(g) for g in golds))
    norm = normalize_answer(prediction)
    return int(any(not is_null(g) and normalize_answer(g) == norm for g in golds))
