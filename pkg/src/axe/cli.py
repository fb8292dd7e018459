"""Command line entry point: ``axe extract|qa|prune|ground|eval``.

Settings are resolved as command line flags, then the ``[axe]`` section
of an INI config file (``--config``), then ``AXE_<FIELD>`` environment
variables, then built-in defaults.  Config keys and environment names use
the PipelineConfig field names, e.g.::

    [axe]
    endpoint = http://localhost:8000/v1
    chunk_budget = 2000
    no_gxr = true

Exit status is 0 on success, 2 when the model output could not be parsed
and a fallback was returned, and 1 on any error.
"""

from __future__ import annotations

import argparse
import configparser
import json
import logging
import os
import sys
from dataclasses import fields, replace
from pathlib import Path

from axe.dom import parse_html
from axe.errors import AxeError
from axe.evalkit import TypoClient, load_dataset, run_eval, sweep_chunk_sizes, write_report, write_sweep_csv
from axe.extractor import ExtractionQuery
from axe.gxr import find_closest_node
from axe.model_client import Recorder
from axe.pipeline import Clients, ConfigError, PipelineConfig, make_clients, run_pipeline
from axe.preprocess import preprocess, strip_noise
from axe.pruner import prune_page

log = logging.getLogger("axe")

EXIT_OK, EXIT_ERROR, EXIT_DEGRADED = 0, 1, 2
ENV_PREFIX = "AXE_"
CONFIG_SECTION = "axe"
_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off", ""}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors, which here means "degraded"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _convert(name: str, raw: str, default):
    kind = type(default) if default is not None else str
    text = raw.strip()
    if kind is bool:
        if text.lower() in _TRUE:
            return True
        if text.lower() in _FALSE:
            return False
        raise ConfigError(f"{name}: expected a boolean, got {raw!r}")
    if kind in (int, float):
        try:
            return kind(text)
        except ValueError:
            raise ConfigError(f"{name}: expected a number, got {raw!r}") from None
    return text or None


def resolve_config(flags: dict, config_path: str | None = None, environ=None) -> PipelineConfig:
    """Merge flags, config file, environment and defaults, in that order of precedence."""
    environ = os.environ if environ is None else environ
    defaults = PipelineConfig()
    known = {f.name for f in fields(PipelineConfig)}
    values = {}
    for name in known:
        env = environ.get(ENV_PREFIX + name.upper())
        if env is not None:
            values[name] = _convert(name, env, getattr(defaults, name))
    if config_path:
        parser = configparser.ConfigParser()
        if not parser.read(config_path, encoding="utf-8"):
            raise FileNotFoundError(f"config file not found: {config_path}")
        if parser.has_section(CONFIG_SECTION):
            for key, raw in parser.items(CONFIG_SECTION):
                name = key.replace("-", "_")
                if name not in known:
                    raise ConfigError(f"{config_path}: unknown setting {key!r}")
                values[name] = _convert(name, raw, getattr(defaults, name))
    values.update({k: v for k, v in flags.items() if k in known and v is not None})
    return replace(defaults, **values).validate()


def _add_pipeline_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("pipeline")
    g.add_argument("--config", help="INI file with an [axe] section")
    g.add_argument("--endpoint", help="OpenAI-compatible base URL")
    g.add_argument("--model", help="model id for every stage")
    g.add_argument("--pruner-model", help="model id for the pruner")
    g.add_argument("--schema-model", help="model id for schema extraction")
    g.add_argument("--qa-model", help="model id for question answering")
    g.add_argument("--api-key-env", help="environment variable holding the API key")
    g.add_argument("--client", choices=("live", "oracle", "scripted"))
    g.add_argument("--script", help="replay file for --client scripted")
    g.add_argument("--record", help="append every model exchange to this replay file")
    g.add_argument("--chunk-budget", type=int)
    g.add_argument("--pruner-budget", type=int)
    g.add_argument("--gxr-threshold", type=float)
    g.add_argument("--gxr-lexicographic", action="store_true", default=None)
    g.add_argument("--no-pruner", action="store_true", default=None)
    g.add_argument("--no-gxr", action="store_true", default=None)
    g.add_argument("--no-adaptor-prompting", action="store_true", default=None)
    g.add_argument("--concurrency", type=int)
    g.add_argument("--temperature", type=float)
    g.add_argument("--out", help="write the result here instead of stdout")
    g.add_argument("-v", "--verbose", action="count", default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="axe", description="Query-driven extraction from HTML pages.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("extract", help="fill a JSON schema from a page")
    p.add_argument("page")
    p.add_argument("schema", help="file holding a flat JSON object")
    _add_pipeline_flags(p)

    p = sub.add_parser("qa", help="answer a question about a page")
    p.add_argument("page")
    p.add_argument("question")
    _add_pipeline_flags(p)

    p = sub.add_parser("prune", help="print the query-relevant part of a page")
    p.add_argument("page")
    p.add_argument("query", help="a question, or a JSON schema object")
    _add_pipeline_flags(p)

    p = sub.add_parser("ground", help="locate the node best matching a text")
    p.add_argument("page")
    p.add_argument("text")
    _add_pipeline_flags(p)

    p = sub.add_parser("eval", help="score a dataset and write report files")
    p.add_argument("dataset", help="JSONL dataset")
    p.add_argument("--sweep", action="store_true", help="also sweep the chunk budget and write sweep.csv")
    p.add_argument("--timing", action="store_true", help="include wall times in report.json")
    p.add_argument("--inject-typos", action="store_true", help="corrupt extractor values by one character")
    _add_pipeline_flags(p)
    return parser


def _read_page(path: str) -> str:
    page = Path(path)
    if not page.is_file():
        raise FileNotFoundError(f"page file not found: {path}")
    return page.read_text(encoding="utf-8", errors="replace")


def _clients(args, config: PipelineConfig) -> Clients:
    clients = make_clients(config)
    if args.record:
        clients = Clients(Recorder(clients.pruner, args.record), Recorder(clients.extractor, args.record))
    return clients


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        sys.stdout.write(text + "\n")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _query_from_text(text: str) -> str:
    """Schema objects are re-rendered the way the pipeline renders them."""
    try:
        obj = json.loads(text)
    except ValueError:
        return text
    if isinstance(obj, dict):
        return ExtractionQuery.from_schema(obj).query_text()
    return text


def cmd_extract(args, config: PipelineConfig) -> int:
    html = _read_page(args.page)
    schema_path = Path(args.schema)
    if not schema_path.is_file():
        raise FileNotFoundError(f"schema file not found: {args.schema}")
    try:
        schema = json.loads(schema_path.read_text(encoding="utf-8"))
    except ValueError as exc:
        raise UsageError(f"{args.schema}: not valid JSON ({exc})") from None
    report = run_pipeline(html, ExtractionQuery.from_schema(schema), config, _clients(args, config))
    _emit(_dump(report.output()), args.out)
    return EXIT_DEGRADED if report.degraded else EXIT_OK


def cmd_qa(args, config: PipelineConfig) -> int:
    html = _read_page(args.page)
    report = run_pipeline(html, ExtractionQuery.from_question(args.question), config, _clients(args, config))
    _emit(_dump(report.output()), args.out)
    return EXIT_DEGRADED if report.degraded else EXIT_OK


def cmd_prune(args, config: PipelineConfig) -> int:
    html = _read_page(args.page)
    _, cleaned, _ = preprocess(parse_html(html))
    clients = _clients(args, config)
    result = prune_page(
        cleaned,
        _query_from_text(args.query),
        clients.pruner,
        config.chunk_budget,
        pruner_budget=config.pruner_budget,
        concurrency=config.concurrency,
        enabled=not config.no_pruner,
        temperature=config.temperature,
    )
    _emit(result.distilled_html, args.out)
    print(
        f"tokens: {result.tokens_before} -> {result.tokens_after} (-{100 * result.reduction:.1f}%)",
        file=sys.stderr,
    )
    return EXIT_DEGRADED if result.fail_open else EXIT_OK


def cmd_ground(args, config: PipelineConfig) -> int:
    tree = strip_noise(parse_html(_read_page(args.page)))
    match = find_closest_node(tree, args.text, lexicographic=config.gxr_lexicographic)
    if match.found and match.score < config.gxr_threshold:
        match = type(match).not_found()
    _emit(_dump(match.to_dict()), args.out)
    return EXIT_OK


def cmd_eval(args, config: PipelineConfig) -> int:
    dataset_path = Path(args.dataset)
    if not dataset_path.is_file():
        raise FileNotFoundError(f"dataset not found: {args.dataset}")
    records = load_dataset(dataset_path)
    clients = _clients(args, config)
    if args.inject_typos:
        clients = Clients(clients.pruner, TypoClient(clients.extractor))
    out_dir = Path(args.out or "axe-report")
    report = run_eval(records, config, clients)
    json_path, text_path = write_report(report, out_dir, include_timing=args.timing)
    print(report.text_table(), file=sys.stderr)
    summary = {"summary": report.summary(), "report_json": str(json_path), "report_txt": str(text_path)}
    if args.sweep:
        sweep = sweep_chunk_sizes(records, config, clients)
        summary["sweep_csv"] = str(write_sweep_csv(sweep, out_dir / "sweep.csv"))
    sys.stdout.write(_dump(summary) + "\n")
    return EXIT_OK


COMMANDS = {"extract": cmd_extract, "qa": cmd_qa, "prune": cmd_prune, "ground": cmd_ground, "eval": cmd_eval}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        config = resolve_config(vars(args), args.config)
        return COMMANDS[args.command](args, config)
    except (AxeError, UsageError, OSError, ValueError) as exc:
        print(f"axe {args.command}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
