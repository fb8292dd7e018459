"""One-character corruption of extractor outputs, for the grounding ablation."""

from __future__ import annotations

import json

from axe.errors import Unparseable
from axe.model_client import ModelClient, parse_extraction


def _shift(ch: str) -> str:
    if ch.isdigit():
        return str((int(ch) + 1) % 10)
    if "a" <= ch.lower() <= "z":
        base = ord("a") if ch.islower() else ord("A")
        return chr(base + (ord(ch) - base + 1) % 26)
    return ch


def inject_typo(value: str) -> str:
    """Corrupt ``value`` by one character.

    Multi-word values get the middle alphanumeric character of their
    longest word shifted (letter to the next letter, digit plus one).
    Single-word values lose their last character.
    """
    tokens = value.split()
    if len(tokens) < 2:
        return value[:-1] if len(value) > 1 else value
    longest = max(range(len(tokens)), key=lambda i: (len(tokens[i]), -i))
    word = tokens[longest]
    alnum = [i for i, ch in enumerate(word) if ch.isalnum() and ch.isascii()]
    if not alnum:
        return value[:-1]
    pos = alnum[len(alnum) // 2]
    tokens[longest] = word[:pos] + _shift(word[pos]) + word[pos + 1 :]
    # rebuild with the original separators
    out, rest = [], value
    for tok, new in zip(value.split(), tokens):
        head, _, rest = rest.partition(tok)
        out.append(head + new)
    return "".join(out) + rest


class TypoClient(ModelClient):
    """Wraps an extractor client and corrupts every string value it returns."""

    def __init__(self, inner: ModelClient):
        self.inner = inner
        self.max_in_flight = inner.max_in_flight

    def complete(self, prompt: str, max_output_tokens: int = 512, temperature: float = 0.0) -> str:
        raw = self.inner.complete(prompt, max_output_tokens, temperature)
        try:
            out = parse_extraction(raw)
        except Unparseable:
            return raw
        payload = {k: inject_typo(v) if isinstance(v, str) else v for k, v in out.payload.items()}
        return f'REASONING: "{out.reasoning}"\n' + json.dumps(payload, ensure_ascii=False)
