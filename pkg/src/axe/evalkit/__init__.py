"""Datasets, metrics, evaluation runs and the synthetic corpus."""

from axe.evalkit.dataset import EvalRecord, load_dataset, parse_record, write_dataset
from axe.evalkit.metrics import exact_match, is_null, normalize_answer, token_f1
from axe.evalkit.runner import (
    CHUNK_SIZE_SWEEP,
    ItemScore,
    MetricReport,
    RecordResult,
    evaluate_record,
    run_eval,
    sweep_chunk_sizes,
    write_report,
    write_sweep_csv,
)
from axe.evalkit.synthetic import bundled_corpus, generate_corpus, write_corpus
from axe.evalkit.typos import TypoClient, inject_typo

__all__ = [
    "EvalRecord",
    "load_dataset",
    "parse_record",
    "write_dataset",
    "exact_match",
    "is_null",
    "normalize_answer",
    "token_f1",
    "CHUNK_SIZE_SWEEP",
    "ItemScore",
    "MetricReport",
    "RecordResult",
    "evaluate_record",
    "run_eval",
    "sweep_chunk_sizes",
    "write_report",
    "write_sweep_csv",
    "bundled_corpus",
    "generate_corpus",
    "write_corpus",
    "TypoClient",
    "inject_typo",
]
