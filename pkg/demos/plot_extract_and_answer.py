"""
Schema extraction and question answering
========================================

The whole pipeline on one page: clean, prune, fill the schema, ground.
Offline oracle clients stand in for the model so this runs anywhere.
"""

import json
from importlib import resources

from axe import ExtractionQuery, PipelineConfig, run_pipeline

html = (resources.files("axe") / "data" / "sample_product.html").read_text()
schema = json.loads((resources.files("axe") / "data" / "sample_schema.json").read_text())
config = PipelineConfig(client="oracle")

report = run_pipeline(html, ExtractionQuery.from_schema(schema), config)
print(json.dumps(report.output(), indent=2))
print(f"tokens {report.tokens_raw} raw, {report.tokens_preprocessed} cleaned, {report.tokens_after_pruning} sent")

for question in ("What is the price?", "Is the color Desert Titanium?", "Is it waterproof?"):
    answer = run_pipeline(html, ExtractionQuery.from_question(question), config).answer
    print(f"{question:32s} {answer}")
