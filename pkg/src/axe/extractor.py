"""Schema filling and question answering over a distilled page."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass

from axe.chunker import DEFAULT_CHUNK_BUDGET, MIN_BUDGET, chunk_blocks
from axe.dom import parse_html
from axe.errors import SchemaError, Unparseable
from axe.model_client import QA_EXTRACTOR, SCHEMA_EXTRACTOR, ModelClient, load_template, parse_extraction, render
from axe.model_client.prompts import PromptTemplate
from axe.tokens import DEFAULT_TOKENIZER, Tokenizer

log = logging.getLogger(__name__)

EXTRACTOR_MAX_OUTPUT = 1024
SCHEMA, QA = "schema", "qa"


@dataclass(frozen=True)
class ExtractionQuery:
    mode: str
    schema: tuple[str, ...] = ()
    question: str = ""

    @classmethod
    def from_schema(cls, schema: dict) -> ExtractionQuery:
        """Build a schema query from a flat JSON object; its values are ignored."""
        if not isinstance(schema, dict) or not schema:
            raise SchemaError("schema must be a non-empty JSON object")
        for key, value in schema.items():
            if not isinstance(key, str) or not key.strip():
                raise SchemaError(f"schema keys must be non-empty strings, got {key!r}")
            if isinstance(value, (dict, list)):
                raise SchemaError(f"nested schemas are not supported (key {key!r})")
        return cls(SCHEMA, schema=tuple(schema))

    @classmethod
    def from_question(cls, question: str) -> ExtractionQuery:
        if not question or not question.strip():
            raise SchemaError("question must be non-empty")
        return cls(QA, question=question.strip())

    @property
    def keys(self) -> list[str]:
        return list(self.schema)

    def query_text(self) -> str:
        """Text substituted for ``{query}`` in the prompts."""
        if self.mode == SCHEMA:
            return json.dumps({k: "" for k in self.schema}, indent=2, ensure_ascii=False)
        return self.question


@dataclass
class FilledSchema:
    values: dict[str, str | None]
    reasoning: str = ""
    degraded: bool = False


@dataclass
class Answer:
    answer: str | None
    reasoning: str = ""
    degraded: bool = False


@dataclass
class _Attempt:
    payload: dict | None
    reasoning: str = ""


def _content_parts(
    html: str, template: PromptTemplate, query_text: str, budget: int, tokenizer: Tokenizer
) -> list[str]:
    """The distilled page, re-chunked if one prompt would overflow ``budget``."""
    if tokenizer.count(render(template, query_text, html)) <= budget:
        return [html]
    overhead = tokenizer.count(render(template, query_text, ""))
    part_budget = max(MIN_BUDGET, budget - overhead)
    log.info("distilled page overflows %d tokens; re-chunking at %d", budget, part_budget)
    return [c.html for c in chunk_blocks(parse_html(html), part_budget, tokenizer)]


def _ask(client, prompt, keys, max_attempts, temperature) -> _Attempt:
    for _ in range(max_attempts):
        raw = client.complete(prompt, EXTRACTOR_MAX_OUTPUT, temperature)
        try:
            out = parse_extraction(raw, keys)
        except Unparseable:
            continue
        return _Attempt(out.payload, out.reasoning)
    return _Attempt(None)


def extract_schema(
    distilled_html: str,
    query: ExtractionQuery,
    client: ModelClient,
    *,
    budget: int = DEFAULT_CHUNK_BUDGET,
    tokenizer: Tokenizer = DEFAULT_TOKENIZER,
    max_attempts: int = 3,
    temperature: float = 0.0,
) -> FilledSchema:
    """Fill ``query``'s schema from the page.

    The output always has exactly the schema's keys.  When the page had to
    be split, each key takes the first non-null value in page order.  If
    no response can be parsed the result is all-null and ``degraded``.
    """
    if query.mode != SCHEMA:
        raise SchemaError("extract_schema needs a schema query")
    template = load_template(SCHEMA_EXTRACTOR)
    query_text = query.query_text()
    values: dict[str, str | None] = {k: None for k in query.keys}
    reasons = []
    parsed_any = False
    for part in _content_parts(distilled_html or " ", template, query_text, budget, tokenizer):
        attempt = _ask(client, render(template, query_text, part), query.keys, max_attempts, temperature)
        if attempt.payload is None:
            continue
        parsed_any = True
        if attempt.reasoning:
            reasons.append(attempt.reasoning)
        for key, value in attempt.payload.items():
            if values[key] is None and value is not None:
                values[key] = value
    if not parsed_any:
        log.warning("extractor output unparseable; returning all-null schema")
    return FilledSchema(values, "\n".join(reasons), degraded=not parsed_any)


def qa_answer(
    distilled_html: str,
    query: ExtractionQuery,
    client: ModelClient,
    *,
    budget: int = DEFAULT_CHUNK_BUDGET,
    tokenizer: Tokenizer = DEFAULT_TOKENIZER,
    max_attempts: int = 3,
    temperature: float = 0.0,
) -> Answer:
    if query.mode != QA:
        raise SchemaError("qa_answer needs a question query")
    template = load_template(QA_EXTRACTOR)
    answers = []
    reasons = []
    parsed_any = False
    for part in _content_parts(distilled_html or " ", template, query.question, budget, tokenizer):
        attempt = _ask(client, render(template, query.question, part), ["answer"], max_attempts, temperature)
        if attempt.payload is None:
            continue
        parsed_any = True
        if attempt.reasoning:
            reasons.append(attempt.reasoning)
        if attempt.payload["answer"] is not None:
            answers.append(attempt.payload["answer"])
    answer = answers[0] if answers else None
    # a yes from any part of a split page settles a boolean question
    if answers and {a.lower() for a in answers} <= {"yes", "no"}:
        answer = "yes" if any(a.lower() == "yes" for a in answers) else answers[0]
    return Answer(answer, "\n".join(reasons), degraded=not parsed_any)


def answer_question(distilled_html: str, query: ExtractionQuery, client: ModelClient, **kwargs) -> str | None:
    return qa_answer(distilled_html, query, client, **kwargs).answer
