"""
Talking to a served model
=========================

Any OpenAI-compatible ``/chat/completions`` endpoint works (vLLM, llama.cpp
server, a hosted API).  Each stage can use its own model id.  Set
``AXE_ENDPOINT`` to try it; without it the script only prints the config.
"""

import json
import os
from importlib import resources

from axe import ExtractionQuery, PipelineConfig, make_clients, run_pipeline

config = PipelineConfig(
    endpoint=os.environ.get("AXE_ENDPOINT", "http://localhost:8000/v1"),
    model=os.environ.get("AXE_MODEL", "Qwen/Qwen3-0.6B"),
    pruner_model=os.environ.get("AXE_PRUNER_MODEL"),
    schema_model=os.environ.get("AXE_SCHEMA_MODEL"),
    concurrency=4,
)
print(config)

if "AXE_ENDPOINT" in os.environ:
    html = (resources.files("axe") / "data" / "sample_product.html").read_text()
    schema = json.loads((resources.files("axe") / "data" / "sample_schema.json").read_text())
    report = run_pipeline(html, ExtractionQuery.from_schema(schema), config, make_clients(config))
    print(json.dumps(report.output(), indent=2))
    print(report.timings)
