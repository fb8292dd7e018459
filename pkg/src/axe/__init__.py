"""Query-driven extraction of structured values from HTML pages.

A page is parsed and cleaned, cut into token-bounded chunks, pruned down
to the blocks that matter for a query, handed to an extractor model and
finally grounded: each extracted value is traced back to the page node it
came from and replaced by that node's exact text.
"""

from axe.chunker import Chunk, MiniChunk, chunk_blocks, decompose, is_atomic
from axe.dom import DomNode, DomTree, XPath, parse_html, resolve_xpath, serialize, visible_text, xpath_of
from axe.errors import AxeError
from axe.extractor import Answer, ExtractionQuery, FilledSchema, answer_question, extract_schema, qa_answer
from axe.gxr import GroundedMatch, TextChunkIndex, find_closest_node, gestalt_ratio, ground_schema, normalize, repair_values
from axe.pipeline import PipelineConfig, PipelineReport, make_clients, run_file, run_pipeline
from axe.preprocess import CleanReport, lossless_clean, preprocess, strip_noise
from axe.pruner import PruneResult, merge_kept, prune_chunk, prune_page
from axe.tokens import ApproxTokenizer, EncoderTokenizer, Tokenizer

__version__ = "0.1.0"

__all__ = [
    "Chunk",
    "MiniChunk",
    "chunk_blocks",
    "decompose",
    "is_atomic",
    "DomNode",
    "DomTree",
    "XPath",
    "parse_html",
    "resolve_xpath",
    "serialize",
    "visible_text",
    "xpath_of",
    "AxeError",
    "Answer",
    "ExtractionQuery",
    "FilledSchema",
    "answer_question",
    "extract_schema",
    "qa_answer",
    "GroundedMatch",
    "TextChunkIndex",
    "find_closest_node",
    "gestalt_ratio",
    "ground_schema",
    "repair_values",
    "normalize",
    "PipelineConfig",
    "PipelineReport",
    "make_clients",
    "run_file",
    "run_pipeline",
    "CleanReport",
    "lossless_clean",
    "preprocess",
    "strip_noise",
    "PruneResult",
    "merge_kept",
    "prune_chunk",
    "prune_page",
    "ApproxTokenizer",
    "EncoderTokenizer",
    "Tokenizer",
]
