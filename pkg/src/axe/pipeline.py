"""End-to-end composition: preprocess, prune, extract, ground."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from axe.chunker import DEFAULT_CHUNK_BUDGET, DEFAULT_PRUNER_BUDGET, MIN_BUDGET
from axe.dom import parse_html
from axe.errors import AxeError
from axe.extractor import SCHEMA, ExtractionQuery, extract_schema, qa_answer
from axe.gxr import DEFAULT_THRESHOLD, GroundedMatch, ground_schema, repair_values
from axe.model_client import QA_EXTRACTOR, HttpChat, ModelClient, OracleExtractor, OraclePruner, Scripted, load_template
from axe.preprocess import CleanReport, preprocess
from axe.pruner import prune_page
from axe.tokens import DEFAULT_TOKENIZER, Tokenizer

CLIENT_KINDS = ("live", "oracle", "scripted")


class ConfigError(AxeError, ValueError):
    pass


@dataclass
class PipelineConfig:
    endpoint: str = "http://localhost:8000/v1"
    model: str = "Qwen/Qwen3-0.6B"
    pruner_model: str | None = None
    schema_model: str | None = None
    qa_model: str | None = None
    api_key_env: str = "AXE_API_KEY"
    chunk_budget: int = DEFAULT_CHUNK_BUDGET
    pruner_budget: int = DEFAULT_PRUNER_BUDGET
    gxr_threshold: float = DEFAULT_THRESHOLD
    gxr_lexicographic: bool = False
    no_pruner: bool = False
    no_gxr: bool = False
    no_adaptor_prompting: bool = False
    client: str = "live"
    script: str | None = None
    concurrency: int = 4
    temperature: float = 0.0

    def validate(self) -> PipelineConfig:
        if self.chunk_budget < MIN_BUDGET or self.pruner_budget < MIN_BUDGET:
            raise ConfigError(f"budgets must be >= {MIN_BUDGET}")
        if not 0.0 <= self.gxr_threshold <= 1.0:
            raise ConfigError("gxr_threshold must lie in [0, 1]")
        if self.client not in CLIENT_KINDS:
            raise ConfigError(f"client must be one of {', '.join(CLIENT_KINDS)}")
        if self.client == "scripted" and not self.script:
            raise ConfigError("the scripted client needs a replay file (script)")
        if self.concurrency < 1:
            raise ConfigError("concurrency must be >= 1")
        return self

    @classmethod
    def field_names(cls) -> list[str]:
        return [f.name for f in fields(cls)]


@dataclass
class Clients:
    pruner: ModelClient
    extractor: ModelClient


def make_clients(config: PipelineConfig) -> Clients:
    """Instantiate the model clients a config asks for.

    For a live endpoint each stage may be served under its own model id
    (one per adaptor); ``no_adaptor_prompting`` sends every stage to the
    base ``model`` instead.
    """
    config.validate()
    if config.client == "oracle":
        return Clients(OraclePruner(), OracleExtractor())
    if config.client == "scripted":
        replay = Scripted.from_file(config.script)
        return Clients(replay, replay)

    def model_for(stage_model):
        return config.model if config.no_adaptor_prompting or not stage_model else stage_model

    def http(model):
        return HttpChat(config.endpoint, model, config.api_key_env, max_in_flight=config.concurrency)

    pruner = http(model_for(config.pruner_model))
    return Clients(pruner, _StageRouter(http(model_for(config.schema_model)), http(model_for(config.qa_model))))


class _StageRouter(ModelClient):
    """Routes schema prompts and QA prompts to different clients."""

    def __init__(self, schema: ModelClient, qa: ModelClient):
        self.schema, self.qa = schema, qa
        self._qa_prefix = load_template(QA_EXTRACTOR).split()[0]
        self.max_in_flight = schema.max_in_flight

    def complete(self, prompt: str, max_output_tokens: int = 512, temperature: float = 0.0) -> str:
        target = self.qa if prompt.startswith(self._qa_prefix) else self.schema
        return target.complete(prompt, max_output_tokens, temperature)


@dataclass
class PipelineReport:
    mode: str
    values: dict[str, str | None] | None = None
    answer: str | None = None
    reasoning: str = ""
    degraded: bool = False
    grounding: dict[str, GroundedMatch] | None = None
    kept_xpaths: list[str] = field(default_factory=list)
    tokens_raw: int = 0
    tokens_preprocessed: int = 0
    tokens_after_pruning: int = 0
    distilled_html: str = ""
    clean: CleanReport | None = None
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def reduction(self) -> float:
        if not self.tokens_preprocessed:
            return 0.0
        return 1.0 - self.tokens_after_pruning / self.tokens_preprocessed

    def output(self) -> dict:
        """The user-facing JSON document: filled schema or ``{"answer": ...}``."""
        if self.mode != SCHEMA:
            return {"answer": self.answer}
        out: dict = dict(self.values)
        if self.grounding is not None:
            out["_grounding"] = {k: m.to_dict() for k, m in self.grounding.items()}
        return out

    def stats(self) -> dict:
        return {
            "tokens_raw": self.tokens_raw,
            "tokens_preprocessed": self.tokens_preprocessed,
            "tokens_after_pruning": self.tokens_after_pruning,
            "kept_xpaths": self.kept_xpaths,
            "clean": asdict(self.clean) if self.clean else None,
        }


def run_pipeline(
    html: str,
    query: ExtractionQuery,
    config: PipelineConfig | None = None,
    clients: Clients | None = None,
    tokenizer: Tokenizer = DEFAULT_TOKENIZER,
) -> PipelineReport:
    """Run one page through every stage the config enables."""
    config = (config or PipelineConfig()).validate()
    clients = clients or make_clients(config)
    timings = {}

    t0 = time.perf_counter()
    stripped, cleaned, clean_report = preprocess(parse_html(html), tokenizer)
    t1 = time.perf_counter()
    timings["preprocess"] = t1 - t0

    pruned = prune_page(
        cleaned,
        query.query_text(),
        clients.pruner,
        config.chunk_budget,
        pruner_budget=config.pruner_budget,
        tokenizer=tokenizer,
        concurrency=config.concurrency,
        enabled=not config.no_pruner,
        temperature=config.temperature,
    )
    t2 = time.perf_counter()
    timings["prune"] = t2 - t1

    report = PipelineReport(
        mode=query.mode,
        kept_xpaths=[str(x) for x in pruned.kept_xpaths],
        tokens_raw=clean_report.tokens_before,
        tokens_preprocessed=pruned.tokens_before,
        tokens_after_pruning=pruned.tokens_after,
        distilled_html=pruned.distilled_html,
        clean=clean_report,
        timings=timings,
    )
    opts = dict(budget=config.chunk_budget, tokenizer=tokenizer, temperature=config.temperature)
    if query.mode == SCHEMA:
        filled = extract_schema(pruned.distilled_html, query, clients.extractor, **opts)
        report.values, report.reasoning, report.degraded = filled.values, filled.reasoning, filled.degraded
        t3 = time.perf_counter()
        timings["extract"] = t3 - t2
        if not config.no_gxr:
            # ground against the noise-free source so XPaths address the real page
            report.grounding = ground_schema(
                stripped, filled.values, config.gxr_threshold, lexicographic=config.gxr_lexicographic
            )
            report.values = repair_values(filled.values, report.grounding)
            timings["ground"] = time.perf_counter() - t3
    else:
        # answers to questions are returned as generated, without grounding
        answer = qa_answer(pruned.distilled_html, query, clients.extractor, **opts)
        report.answer, report.reasoning, report.degraded = answer.answer, answer.reasoning, answer.degraded
        timings["extract"] = time.perf_counter() - t2
    return report


def run_file(page: str | Path, query: ExtractionQuery, config: PipelineConfig | None = None, **kwargs) -> PipelineReport:
    return run_pipeline(Path(page).read_text(encoding="utf-8", errors="replace"), query, config, **kwargs)
