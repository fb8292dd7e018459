import csv
import json
from dataclasses import replace
from fractions import Fraction

import pytest
from fakes import Sequence

from axe.evalkit import (
    TypoClient,
    bundled_corpus,
    exact_match,
    generate_corpus,
    inject_typo,
    load_dataset,
    normalize_answer,
    run_eval,
    sweep_chunk_sizes,
    token_f1,
    write_corpus,
    write_dataset,
    write_report,
    write_sweep_csv,
)
from axe.evalkit.swde import convert_site, read_groundtruth
from axe.model_client import OracleExtractor, OraclePruner
from axe.pipeline import Clients, PipelineConfig

ORACLE = PipelineConfig(client="oracle")
PAGE = "<table><tr><th>Price</th><td>$5</td></tr><tr><th>Color</th><td>Red</td></tr></table>"


def test_metric_golden(data_dir):
    cases = json.loads((data_dir / "metric_golden.json").read_text())
    assert len(cases) >= 20
    for case in cases:
        assert abs(token_f1(case["prediction"], case["golds"]) - float(Fraction(case["f1"]))) <= 1e-9, case
        assert exact_match(case["prediction"], case["golds"]) == case["em"], case


def test_normalize_answer():
    assert normalize_answer("The  Apple, Inc.") == "apple inc"
    assert normalize_answer("an a the") == ""


def test_null_handling():
    assert token_f1(None, [None]) == 1.0 and exact_match("<NULL>", [None]) == 1
    assert token_f1(None, ["x"]) == 0.0 and exact_match("x", [None]) == 0
    with pytest.raises(ValueError):
        token_f1("x", [])


def write_mini(tmp_path, records):
    (tmp_path / "p.html").write_text(PAGE)
    path = tmp_path / "d.jsonl"
    path.write_text("\n".join(json.dumps(r) for r in records) + "\n")
    return path


def test_load_dataset_forms(tmp_path):
    path = write_mini(tmp_path, [
        {"id": "a", "page": "p.html", "schema": {"Price": "", "Size": ""}, "gold": {"Price": "$5"}},
        {"page": "p.html", "question": "What is the color?", "gold": "Red"},
    ])
    a, b = load_dataset(path)
    assert a.items() == [("Price", ["$5"]), ("Size", [None])]
    assert b.record_id == "r0001" and b.items() == [("answer", ["Red"])]
    out = tmp_path / "copy.jsonl"
    write_dataset([a, b], out)
    assert [r.items() for r in load_dataset(out)] == [a.items(), b.items()]


def test_load_dataset_errors(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_dataset(write_mini(tmp_path, [{"page": "missing.html", "question": "q", "gold": "x"}]))
    with pytest.raises(ValueError):
        load_dataset(write_mini(tmp_path, [{"page": "p.html", "question": "q", "gold": []}]))


def test_run_eval_scores_and_records_errors(tmp_path):
    path = write_mini(tmp_path, [
        {"id": "a", "page": "p.html", "schema": {"Price": "", "Color": ""}, "gold": {"Price": "$5", "Color": "Blue"}},
        {"id": "b", "page": "p.html", "question": "What is the color?", "gold": ["Red"]},
    ])
    records = load_dataset(path)
    report = run_eval(records, ORACLE)
    assert [i.exact_match for i in report.items] == [1, 0, 1]
    assert report.exact_match == pytest.approx(2 / 3)
    broken = [replace(records[0], page_path=tmp_path / "gone.html")] + records[1:]
    report = run_eval(broken, ORACLE)
    assert report.errors == 1
    assert report.records[0].error.startswith("FileNotFoundError")
    assert [i.token_f1 for i in report.records[0].items] == [0.0, 0.0]


def test_report_is_deterministic_and_written(tmp_path):
    records = load_dataset(bundled_corpus() / "dataset.jsonl")[:6]
    a = run_eval(records, ORACLE, workers=1).to_json()
    b = run_eval(records, ORACLE, workers=4).to_json()
    assert a == b
    report = run_eval(records, ORACLE)
    json_path, text_path = write_report(report, tmp_path / "out")
    data = json.loads(json_path.read_text())
    assert data["summary"]["token_f1"] == 1.0
    assert "wall_time" not in json.dumps(data)
    assert "product-00" in text_path.read_text()
    timed = json.loads(report.to_json(include_timing=True))
    assert "wall_time" in json.dumps(timed)


def test_sweep_csv(tmp_path):
    records = load_dataset(bundled_corpus() / "dataset.jsonl")[:3]
    results = sweep_chunk_sizes(records, ORACLE, sizes=(500, 4000))
    path = write_sweep_csv(results, tmp_path / "sweep.csv")
    rows = list(csv.DictReader(path.open()))
    assert [r["chunk_size"] for r in rows] == ["500", "4000"]
    assert all(float(r["token_f1"]) == 1.0 for r in rows)


@pytest.mark.parametrize(
    "value, corrupted",
    [
        ("Desert Titanium", "Desert Titaoium"),
        ("$1,039.99", "$1,039.9"),
        ("Apple", "Appl"),
        ("a  b", "b  b"),
        ("x", "x"),
    ],
)
def test_inject_typo(value, corrupted):
    assert inject_typo(value) == corrupted


def test_typo_client_wraps_extractor():
    inner = Sequence('REASONING: "r"\n{"Color": "Desert Titanium", "Size": null}')
    out = TypoClient(inner).complete("p")
    assert out == 'REASONING: "r"\n{"Color": "Desert Titaoium", "Size": null}'
    assert TypoClient(Sequence("garbage")).complete("p") == "garbage"


def test_typo_ablation_on_corpus():
    records = load_dataset(bundled_corpus() / "dataset.jsonl")[:8]
    clients = Clients(OraclePruner(), TypoClient(OracleExtractor()))
    assert run_eval(records, ORACLE, clients).exact_match == 1.0
    assert run_eval(records, replace(ORACLE, no_gxr=True), clients).exact_match == 0.0


def test_corpus_generation_is_reproducible(tmp_path):
    write_corpus(tmp_path)
    bundled = bundled_corpus()
    for name in ("dataset.jsonl", "qa_dataset.jsonl"):
        assert (tmp_path / name).read_text() == (bundled / name).read_text()
    for page in generate_corpus():
        assert (bundled / "pages" / f"{page.page_id}.html").read_text() == page.html


def test_swde_conversion(tmp_path):
    gt = tmp_path / "gt"
    gt.mkdir()
    (gt / "auto-msn-price.txt").write_text("auto\tmsn\tprice\n2\t2\t\n0000\t1\t$23,510\n0001\t2\t$10,995\t$11,995\n")
    (gt / "auto-msn-model.txt").write_text("auto\tmsn\tmodel\n2\t2\t\n0000\t1\tCivic\n0001\t1\t<NULL>\n")
    pages = tmp_path / "pages"
    pages.mkdir()
    (pages / "0000.htm").write_text("<p>Civic</p><p>$23,510</p>")
    (pages / "0001.htm").write_text("<p>$10,995</p>")
    assert read_groundtruth(gt / "auto-msn-price.txt") == ("price", {"0000": ["$23,510"], "0001": ["$10,995", "$11,995"]})
    n = convert_site(sorted(gt.iterdir()), pages, tmp_path / "swde.jsonl")
    assert n == 2
    records = load_dataset(tmp_path / "swde.jsonl")
    assert records[1].items() == [("model", [None]), ("price", ["$10,995", "$11,995"])]
    assert records[0].page_path.read_text().startswith("<p>Civic")
