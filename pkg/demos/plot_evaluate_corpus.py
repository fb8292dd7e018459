"""
Evaluating on the bundled corpus
================================

Forty synthetic pages across five verticals, mostly boilerplate, with
every answer present verbatim.  Ablations switch stages off one at a time.
"""

from dataclasses import replace

from axe import PipelineConfig
from axe.evalkit import TypoClient, bundled_corpus, load_dataset, run_eval, sweep_chunk_sizes
from axe.model_client import OracleExtractor, OraclePruner
from axe.pipeline import Clients

records = load_dataset(bundled_corpus() / "dataset.jsonl")
config = PipelineConfig(client="oracle")

full = run_eval(records, config)
print(full.text_table().splitlines()[-1])


def line(name, report):
    s = report.summary()
    print(f"{name:24s} F1 {s['token_f1']:.3f}  EM {s['exact_match']:.3f}  reduction {100 * s['mean_reduction']:5.1f}%")


line("full", full)
line("no pruner", run_eval(records, replace(config, no_pruner=True)))

# corrupt every extracted value by one character
typos = Clients(OraclePruner(), TypoClient(OracleExtractor()))
line("typos", run_eval(records, config, typos))
line("typos, no grounding", run_eval(records, replace(config, no_gxr=True), typos))

# chunk budget sweep
for size, report in sweep_chunk_sizes(records[:10], config, sizes=(500, 2000, 5000)):
    line(f"chunk budget {size}", report)

qa = run_eval(load_dataset(bundled_corpus() / "qa_dataset.jsonl"), config)
line("questions", qa)
