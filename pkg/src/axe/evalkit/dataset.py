"""Evaluation records stored as JSON lines next to their page files.

One record per line::

    {"id": "p000", "page": "pages/p000.html",
     "schema": {"Price": ""}, "gold": {"Price": ["$5", "5 USD"]}}

    {"id": "q000", "page": "pages/p000.html",
     "question": "What is the Price?", "gold": ["$5"]}

Page paths are relative to the JSONL file.  A gold entry may be a single
string instead of a list; ``null`` marks an expected missing value.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from axe.extractor import SCHEMA, ExtractionQuery


@dataclass
class EvalRecord:
    record_id: str
    page_path: Path
    query: ExtractionQuery
    gold: dict[str, list[str | None]] | list[str | None]

    def items(self) -> list[tuple[str, list[str | None]]]:
        """(attribute, acceptable answers) pairs; QA records use the key ``answer``."""
        if isinstance(self.gold, dict):
            return list(self.gold.items())
        return [("answer", self.gold)]


def _as_list(value) -> list:
    return list(value) if isinstance(value, list) else [value]


def parse_record(obj: dict, base: Path, lineno: int = 0) -> EvalRecord:
    record_id = str(obj.get("id", f"r{lineno:04d}"))
    page = base / obj["page"]
    if not page.is_file():
        raise FileNotFoundError(f"record {record_id}: page {page} does not exist")
    if "schema" in obj:
        query = ExtractionQuery.from_schema(obj["schema"])
        gold = {k: _as_list(obj["gold"].get(k)) for k in query.keys}
    else:
        query = ExtractionQuery.from_question(obj["question"])
        gold = _as_list(obj["gold"])
    for key, golds in (gold.items() if isinstance(gold, dict) else [("answer", gold)]):
        if not golds:
            raise ValueError(f"record {record_id}: empty gold list for {key!r}")
    return EvalRecord(record_id, page, query, gold)


def load_dataset(path: str | Path) -> list[EvalRecord]:
    path = Path(path)
    records = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh):
            if line.strip():
                records.append(parse_record(json.loads(line), path.parent, lineno))
    return records


def record_to_json(record: EvalRecord, base: Path) -> dict:
    obj: dict = {"id": record.record_id, "page": record.page_path.relative_to(base).as_posix()}
    if record.query.mode == SCHEMA:
        obj["schema"] = {k: "" for k in record.query.keys}
    else:
        obj["question"] = record.query.question
    obj["gold"] = record.gold
    return obj


def write_dataset(records: list[EvalRecord], path: str | Path) -> None:
    path = Path(path)
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record_to_json(record, path.parent), ensure_ascii=False) + "\n")
