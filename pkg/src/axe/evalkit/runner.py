"""Batch evaluation, ablation runs and the chunk-size sweep."""

from __future__ import annotations

import csv
import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from statistics import fmean

from axe.evalkit.dataset import EvalRecord
from axe.evalkit.metrics import exact_match, token_f1
from axe.extractor import SCHEMA
from axe.pipeline import Clients, PipelineConfig, make_clients, run_pipeline
from axe.tokens import DEFAULT_TOKENIZER, Tokenizer

log = logging.getLogger(__name__)

CHUNK_SIZE_SWEEP = (500, 1000, 2000, 3000, 4000, 5000)


@dataclass
class ItemScore:
    key: str
    prediction: str | None
    golds: list
    token_f1: float
    exact_match: int


@dataclass
class RecordResult:
    record_id: str
    page: str
    mode: str
    items: list[ItemScore] = field(default_factory=list)
    tokens_before: int = 0
    tokens_after: int = 0
    degraded: bool = False
    grounded: bool = False
    error: str | None = None
    wall_time: float = 0.0

    @property
    def token_f1(self) -> float:
        return fmean(i.token_f1 for i in self.items) if self.items else 0.0

    @property
    def exact_match(self) -> float:
        return fmean(i.exact_match for i in self.items) if self.items else 0.0

    @property
    def reduction(self) -> float:
        return 1.0 - self.tokens_after / self.tokens_before if self.tokens_before else 0.0


@dataclass
class MetricReport:
    records: list[RecordResult]
    config: dict
    wall_time: float = 0.0

    @property
    def items(self) -> list[ItemScore]:
        return [i for r in self.records for i in r.items]

    @property
    def token_f1(self) -> float:
        """Mean F1 over all (page, attribute) pairs."""
        items = self.items
        return fmean(i.token_f1 for i in items) if items else 0.0

    @property
    def exact_match(self) -> float:
        items = self.items
        return fmean(i.exact_match for i in items) if items else 0.0

    @property
    def mean_reduction(self) -> float:
        return fmean(r.reduction for r in self.records) if self.records else 0.0

    @property
    def errors(self) -> int:
        return sum(r.error is not None for r in self.records)

    def per_key(self) -> dict[str, dict[str, float]]:
        groups: dict[str, list[ItemScore]] = {}
        for item in self.items:
            groups.setdefault(item.key, []).append(item)
        return {
            key: {"token_f1": fmean(i.token_f1 for i in g), "exact_match": fmean(i.exact_match for i in g), "n": len(g)}
            for key, g in sorted(groups.items())
        }

    def summary(self) -> dict:
        return {
            "records": len(self.records),
            "items": len(self.items),
            "errors": self.errors,
            "token_f1": self.token_f1,
            "exact_match": self.exact_match,
            "mean_tokens_before": fmean(r.tokens_before for r in self.records) if self.records else 0.0,
            "mean_tokens_after": fmean(r.tokens_after for r in self.records) if self.records else 0.0,
            "mean_reduction": self.mean_reduction,
        }

    def to_dict(self, include_timing: bool = False) -> dict:
        records = []
        for r in self.records:
            d = asdict(r)
            d.update(token_f1=r.token_f1, exact_match=r.exact_match, reduction=r.reduction)
            if not include_timing:
                d.pop("wall_time")
            records.append(d)
        out = {"summary": self.summary(), "per_key": self.per_key(), "config": self.config, "records": records}
        if include_timing:
            out["wall_time"] = self.wall_time
        return out

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), indent=2, sort_keys=True, ensure_ascii=False)

    def text_table(self) -> str:
        rows = [("record", "mode", "F1", "EM", "tokens", "after", "reduction", "note")]
        for r in self.records:
            note = r.error or ("degraded" if r.degraded else "")
            rows.append(
                (r.record_id, r.mode, f"{r.token_f1:.4f}", f"{r.exact_match:.4f}", str(r.tokens_before),
                 str(r.tokens_after), f"{100 * r.reduction:.1f}%", note)
            )
        s = self.summary()
        rows.append(
            ("ALL", "", f"{s['token_f1']:.4f}", f"{s['exact_match']:.4f}", f"{s['mean_tokens_before']:.1f}",
             f"{s['mean_tokens_after']:.1f}", f"{100 * s['mean_reduction']:.1f}%", f"{s['errors']} errors")
        )
        widths = [max(len(row[c]) for row in rows) for c in range(len(rows[0]))]
        lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
        lines.insert(1, "  ".join("-" * w for w in widths))
        lines.insert(len(lines) - 1, lines[1])
        return "\n".join(lines)


def evaluate_record(
    record: EvalRecord, config: PipelineConfig, clients: Clients, tokenizer: Tokenizer = DEFAULT_TOKENIZER
) -> RecordResult:
    """Run one record; failures are recorded as a zero score, never raised."""
    result = RecordResult(record.record_id, record.page_path.name, record.query.mode)
    start = time.perf_counter()
    try:
        html = record.page_path.read_text(encoding="utf-8", errors="replace")
        report = run_pipeline(html, record.query, config, clients, tokenizer)
        result.tokens_before = report.tokens_preprocessed
        result.tokens_after = report.tokens_after_pruning
        result.degraded = report.degraded
        result.grounded = report.grounding is not None
        for key, golds in record.items():
            pred = report.values.get(key) if report.mode == SCHEMA else report.answer
            result.items.append(ItemScore(key, pred, golds, token_f1(pred, golds), exact_match(pred, golds)))
    except Exception as exc:  # noqa: BLE001 - one bad page must not abort the run
        log.exception("record %s failed", record.record_id)
        result.error = f"{type(exc).__name__}: {exc}"
        result.items = [ItemScore(key, None, golds, 0.0, 0) for key, golds in record.items()]
    result.wall_time = time.perf_counter() - start
    return result


def _config_snapshot(config: PipelineConfig) -> dict:
    snap = asdict(config)
    snap.pop("script", None)
    return snap


def run_eval(
    dataset: list[EvalRecord],
    config: PipelineConfig | None = None,
    clients: Clients | None = None,
    *,
    workers: int | None = None,
    tokenizer: Tokenizer = DEFAULT_TOKENIZER,
) -> MetricReport:
    config = (config or PipelineConfig()).validate()
    clients = clients or make_clients(config)
    start = time.perf_counter()
    workers = workers or config.concurrency

    def one(record):
        return evaluate_record(record, config, clients, tokenizer)

    if workers > 1 and len(dataset) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, dataset))
    else:
        results = [one(r) for r in dataset]
    return MetricReport(results, _config_snapshot(config), time.perf_counter() - start)


def write_report(report: MetricReport, out_dir: str | Path, include_timing: bool = False) -> tuple[Path, Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    json_path = out_dir / "report.json"
    text_path = out_dir / "report.txt"
    json_path.write_text(report.to_json(include_timing) + "\n", encoding="utf-8")
    text_path.write_text(report.text_table() + "\n", encoding="utf-8")
    return json_path, text_path


def sweep_chunk_sizes(
    dataset: list[EvalRecord],
    config: PipelineConfig | None = None,
    clients: Clients | None = None,
    sizes=CHUNK_SIZE_SWEEP,
    **kwargs,
) -> list[tuple[int, MetricReport]]:
    """Evaluate the same dataset at each chunk budget."""
    config = config or PipelineConfig()
    clients = clients or make_clients(config)
    return [(size, run_eval(dataset, replace(config, chunk_budget=size), clients, **kwargs)) for size in sizes]


def write_sweep_csv(results: list[tuple[int, MetricReport]], path: str | Path) -> Path:
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["chunk_size", "token_f1", "exact_match", "mean_tokens_after", "mean_reduction"])
        for size, rep in results:
            s = rep.summary()
            writer.writerow(
                [size, f"{s['token_f1']:.6f}", f"{s['exact_match']:.6f}", f"{s['mean_tokens_after']:.1f}",
                 f"{s['mean_reduction']:.6f}"]
            )
    return path
