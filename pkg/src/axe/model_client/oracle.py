"""Deterministic offline stand-ins for the pruner and extractor models.

These let the full pipeline run, and be tested, without model weights.
They are fixtures with simple documented rules, not approximations of
what a trained model does:

* the pruner keeps a mini-chunk when its text shares a word with the
  query's content words (schema keys, or the question minus stop words),
  or when the chunk carries the ``data-axe-relevant`` marker attribute;
* the extractor finds, for each key, the first text run whose label
  (text before a colon, or the whole run) fuzzily matches the key, and
  returns the text after the colon or else the next text run.
"""

from __future__ import annotations

import json
import re
from html.parser import HTMLParser
from typing import Iterable

from axe.gxr import gestalt_ratio, normalize
from axe.model_client.clients import ModelClient
from axe.model_client.parsing import PruneDecision
from axe.model_client.prompts import PRUNER, QA_EXTRACTOR, SCHEMA_EXTRACTOR, load_template, unrender

RELEVANT_MARKER = "data-axe-relevant"
LABEL_SIMILARITY = 0.8

STOPWORDS = frozenset(
    """
    a an the is are was were be been what which who whom whose when where why how
    of in on at for to by with from and or not no does do did can could has have had
    this that these those it its there any some page listed shown given value
    """.split()
)
BOOLEAN_LEADS = frozenset("is are was were does do did can could has have had will".split())
_WH_QUESTION = re.compile(
    r"^\s*(?:what|which|who|where|when|how much|how many)\s+(?:is|are|was|were)\s+(?:the\s+)?(.+?)\s*\??\s*$",
    re.I,
)
_WORD = re.compile(r"\w+")


class _TextRuns(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.runs: list[str] = []
        self._buf: list[str] = []
        self._skip = 0
        self.marked = False

    def _flush(self):
        text = "".join(self._buf).strip()
        if text:
            self.runs.append(text)
        self._buf = []

    def handle_starttag(self, tag, attrs):
        self._flush()
        if tag in ("script", "style"):
            self._skip += 1
        if any(name == RELEVANT_MARKER for name, _ in attrs):
            self.marked = True

    def handle_startendtag(self, tag, attrs):
        self.handle_starttag(tag, attrs)
        if tag in ("script", "style"):
            self._skip -= 1

    def handle_endtag(self, tag):
        self._flush()
        if tag in ("script", "style") and self._skip:
            self._skip -= 1

    def handle_data(self, data):
        if not self._skip:
            self._buf.append(data)

    def close(self):
        super().close()
        self._flush()


def text_runs(html: str) -> tuple[list[str], bool]:
    """Text between tags, in document order, plus whether any tag is marked relevant."""
    parser = _TextRuns()
    parser.feed(html)
    parser.close()
    return parser.runs, parser.marked


def words(text: str) -> set[str]:
    return set(_WORD.findall(text.lower()))


def query_terms(query: str) -> set[str]:
    """Content words of a query: schema keys when it is a JSON object, else the question."""
    text = query
    try:
        obj = json.loads(query)
    except ValueError:
        obj = None
    if isinstance(obj, dict):
        text = " ".join(obj)
    return words(text) - STOPWORDS


def oracle_prune(minichunks: Iterable, query: str) -> PruneDecision:
    """Keep mini-chunks sharing a content word with ``query`` or marked relevant.

    Items may be MiniChunk objects or raw HTML strings.
    """
    terms = query_terms(query)
    kept = []
    for i, chunk in enumerate(minichunks):
        html = chunk if isinstance(chunk, str) else chunk.html
        runs, marked = text_runs(html)
        if marked or terms & words(" ".join(runs)):
            kept.append(i)
    return PruneDecision(tuple(kept))


def _label_matches(label: str, key: str) -> bool:
    label, key = normalize(label), normalize(key)
    return bool(label) and (label == key or gestalt_ratio(label, key) >= LABEL_SIMILARITY)


def lookup_label(runs: list[str], key: str) -> str | None:
    """Value following the first run labelled ``key``; None when no label matches."""
    for pos, run in enumerate(runs):
        label, colon, rest = run.partition(":")
        if not _label_matches(label, key):
            continue
        rest = rest.strip()
        if colon and rest:
            return rest
        if pos + 1 < len(runs):
            return runs[pos + 1]
    return None


def oracle_extract(html: str, keys: Iterable[str]) -> dict[str, str | None]:
    runs, _ = text_runs(html)
    return {key: lookup_label(runs, key) for key in keys}


def oracle_answer(html: str, question: str) -> str | None:
    """Answer a question from ``html`` with the label rule.

    Questions opening with an auxiliary verb ("Is ...", "Does ...") are
    boolean: "yes" when every content word of the question occurs in the
    page text, else "no".  "What/Which/... is the X?" is looked up as
    label X.  Anything else is unanswerable.
    """
    runs, _ = text_runs(html)
    tokens = _WORD.findall(question.lower())
    if tokens and tokens[0] in BOOLEAN_LEADS:
        needed = set(tokens[1:]) - STOPWORDS
        return "yes" if needed <= words(" ".join(runs)) else "no"
    m = _WH_QUESTION.match(question)
    return lookup_label(runs, m.group(1)) if m else None


class OraclePruner(ModelClient):
    """Answers rendered pruner prompts with :func:`oracle_prune`."""

    def complete(self, prompt: str, max_output_tokens: int = 512, temperature: float = 0.0) -> str:
        parts = unrender(load_template(PRUNER), prompt)
        if parts is None:
            return "I can only answer pruner prompts."
        query, content = parts
        htmls = []
        for line in content.split("\n"):
            idx, sep, html = line.partition(": ")
            if sep and idx.isdigit():
                htmls.append(html)
        return json.dumps(list(oracle_prune(htmls, query).kept_indices))


class OracleExtractor(ModelClient):
    """Answers rendered schema and QA prompts with the label-lookup rule."""

    def complete(self, prompt: str, max_output_tokens: int = 512, temperature: float = 0.0) -> str:
        parts = unrender(load_template(SCHEMA_EXTRACTOR), prompt)
        if parts is not None:
            schema, content = parts
            keys = list(json.loads(schema))
            payload = oracle_extract(content, keys)
            return 'REASONING: "values taken from the text after each matching label"\n' + json.dumps(
                payload, ensure_ascii=False
            )
        parts = unrender(load_template(QA_EXTRACTOR), prompt)
        if parts is not None:
            question, content = parts
            answer = oracle_answer(content, question)
            return 'REASONING: "answer read from the context"\n' + json.dumps({"answer": answer}, ensure_ascii=False)
        return "I can only answer extraction prompts."
