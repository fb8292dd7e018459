"""Prompt templates, model clients and response parsers."""

from axe.model_client.clients import HttpChat, ModelClient, Recorder, Scripted, prompt_hash
from axe.model_client.oracle import (
    RELEVANT_MARKER,
    OracleExtractor,
    OraclePruner,
    oracle_answer,
    oracle_extract,
    oracle_prune,
)
from axe.model_client.parsing import ExtractorOutput, PruneDecision, parse_extraction, parse_prune
from axe.model_client.prompts import (
    PRUNER,
    QA_EXTRACTOR,
    SCHEMA_EXTRACTOR,
    TEMPLATE_NAMES,
    PromptTemplate,
    enumerate_chunks,
    load_template,
    render,
    unrender,
)

__all__ = [
    "HttpChat",
    "ModelClient",
    "Recorder",
    "Scripted",
    "prompt_hash",
    "RELEVANT_MARKER",
    "OracleExtractor",
    "OraclePruner",
    "oracle_answer",
    "oracle_extract",
    "oracle_prune",
    "ExtractorOutput",
    "PruneDecision",
    "parse_extraction",
    "parse_prune",
    "PRUNER",
    "QA_EXTRACTOR",
    "SCHEMA_EXTRACTOR",
    "TEMPLATE_NAMES",
    "PromptTemplate",
    "enumerate_chunks",
    "load_template",
    "render",
    "unrender",
]
