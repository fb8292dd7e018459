"""Best-effort conversion of SWDE ground truth into the JSONL dataset format.

SWDE ships one ground-truth file per (site, attribute), named like
``auto-msn-price.txt``::

    auto	msn	price
    2000	1877	...
    0000	1	$23,510
    0001	2	$10,995	$11,995

and pages under ``<vertical>/<vertical>-<site>(<n>)/<pageid>.htm``.
``<NULL>`` marks a missing value.  The layout above is the commonly
distributed one; other releases may differ and are not handled.
"""

from __future__ import annotations

import json
from pathlib import Path

NULL = "<NULL>"


def read_groundtruth(path: str | Path) -> tuple[str, dict[str, list[str | None]]]:
    """(attribute, page id -> acceptable values) from one ground-truth file."""
    lines = Path(path).read_text(encoding="utf-8", errors="replace").splitlines()
    if len(lines) < 2:
        raise ValueError(f"{path}: too short for an SWDE ground-truth file")
    header = lines[0].split("\t")
    if len(header) < 3:
        raise ValueError(f"{path}: header should be vertical, site, attribute")
    attribute = header[2].strip()
    values: dict[str, list[str | None]] = {}
    for line in lines[2:]:
        cols = line.split("\t")
        if len(cols) < 3:
            continue
        golds = [None if v.strip() == NULL else v.strip() for v in cols[2:] if v.strip()]
        values[cols[0].strip()] = golds or [None]
    return attribute, values


def convert_site(groundtruth_files: list[str | Path], pages_dir: str | Path, out_path: str | Path) -> int:
    """Write one schema record per page that exists; returns the record count."""
    pages_dir, out_path = Path(pages_dir), Path(out_path)
    table: dict[str, dict[str, list]] = {}
    attributes = []
    for gt in groundtruth_files:
        attribute, values = read_groundtruth(gt)
        attributes.append(attribute)
        for page_id, golds in values.items():
            table.setdefault(page_id, {})[attribute] = golds
    count = 0
    with open(out_path, "w", encoding="utf-8") as fh:
        for page_id in sorted(table):
            page = pages_dir / f"{page_id}.htm"
            if not page.is_file():
                continue
            page, base = page.resolve(), out_path.parent.resolve()
            # absolute paths survive the join in load_dataset unchanged
            rel = page.relative_to(base).as_posix() if page.is_relative_to(base) else str(page)
            gold = {a: table[page_id].get(a, [None]) for a in attributes}
            fh.write(json.dumps({"id": page_id, "page": rel, "schema": {a: "" for a in attributes}, "gold": gold}) + "\n")
            count += 1
    return count
