"""Token counting used for chunk budgets and reduction accounting."""

from __future__ import annotations

import re
from typing import Callable, Protocol

_PIECES = re.compile(r"\w+|[^\w\s]")


class Tokenizer(Protocol):
    def count(self, text: str) -> int: ...


class ApproxTokenizer:
    """Model-free estimate of sub-word token counts.

    Counts words and individual punctuation marks, then scales by 1.3 and
    rounds up.  Good enough to size chunks without downloading a model
    vocabulary.
    """

    def count(self, text: str) -> int:
        n = len(_PIECES.findall(text))
        # ceil(1.3 * n) without float rounding surprises
        return (13 * n + 9) // 10


class EncoderTokenizer:
    """Wraps any ``encode(text) -> sequence`` callable, e.g. a HF tokenizer."""

    def __init__(self, encode: Callable[[str], list]):
        self._encode = encode

    def count(self, text: str) -> int:
        return len(self._encode(text)) if text else 0


DEFAULT_TOKENIZER = ApproxTokenizer()
