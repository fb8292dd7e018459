"""Query-driven pruning of a cleaned page down to its relevant mini-chunks."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

from axe.chunker import DEFAULT_CHUNK_BUDGET, DEFAULT_PRUNER_BUDGET, Chunk, MiniChunk, chunk_blocks, decompose
from axe.dom import ELEMENT, TEXT, DomNode, DomTree, XPath, resolve_xpath, serialize
from axe.errors import NotFound, Unparseable, UnresolvedXPath
from axe.model_client import PRUNER, ModelClient, PruneDecision, enumerate_chunks, load_template, parse_prune, render
from axe.preprocess import lossless_clean
from axe.tokens import DEFAULT_TOKENIZER, Tokenizer

log = logging.getLogger(__name__)

PRUNER_MAX_OUTPUT = 512


@dataclass
class PruneResult:
    kept_xpaths: list[XPath]
    distilled_html: str
    tokens_before: int
    tokens_after: int
    chunks: int = 0
    minichunks: int = 0
    fail_open: int = 0
    decisions: list[PruneDecision] = field(default_factory=list)

    @property
    def reduction(self) -> float:
        if not self.tokens_before:
            return 0.0
        return 1.0 - self.tokens_after / self.tokens_before


def _batches(minichunks: list[MiniChunk], query: str, budget: int, tokenizer: Tokenizer) -> list[list[int]]:
    # additive estimate; an upper bound for the sub-additive default tokenizer
    overhead = tokenizer.count(render(load_template(PRUNER), query, ""))
    batches: list[list[int]] = []
    current: list[int] = []
    used = overhead
    for i, mini in enumerate(minichunks):
        cost = tokenizer.count(f"{len(current)}: {mini.html}") + 1
        if current and used + cost > budget:
            batches.append(current)
            current, used = [], overhead
            cost = tokenizer.count(f"0: {mini.html}") + 1
        current.append(i)
        used += cost
    if current:
        batches.append(current)
    return batches


def prune_chunk(
    chunk: Chunk,
    minichunks: list[MiniChunk],
    query: str,
    client: ModelClient,
    *,
    pruner_budget: int = DEFAULT_PRUNER_BUDGET,
    tokenizer: Tokenizer = DEFAULT_TOKENIZER,
    max_attempts: int = 3,
    temperature: float = 0.0,
) -> PruneDecision:
    """Ask the pruner which of a chunk's mini-chunks matter for ``query``.

    Mini-chunks are offered as ``index: html`` lines, split into several
    prompts if one would overflow ``pruner_budget``.  A batch whose answer
    stays unparseable after ``max_attempts`` keeps all its mini-chunks.
    """
    template = load_template(PRUNER)
    kept: list[int] = []
    fail_open = 0
    for batch in _batches(minichunks, query, pruner_budget, tokenizer):
        prompt = render(template, query, enumerate_chunks([minichunks[i].html for i in batch]))
        for _ in range(max_attempts):
            raw = client.complete(prompt, PRUNER_MAX_OUTPUT, temperature)
            try:
                decision = parse_prune(raw, len(batch))
            except Unparseable:
                continue
            kept.extend(batch[i] for i in decision.kept_indices)
            break
        else:
            log.warning("chunk %d: pruner output unparseable, keeping %d mini-chunks", chunk.index, len(batch))
            kept.extend(batch)
            fail_open += 1
    return PruneDecision.of(kept, len(minichunks), fail_open)


def merge_kept(tree: DomTree, kept: list[XPath], tokenizer: Tokenizer = DEFAULT_TOKENIZER) -> str:
    """Rebuild the smallest ancestor-closed page holding the kept nodes.

    The kept subtrees appear in source order under their shared ancestors
    (with attributes), the result is losslessly cleaned again and
    serialized.  ``head`` is not carried over.
    """
    keep_ids: set[int] = set()
    for path in kept:
        try:
            keep_ids.add(resolve_xpath(tree, path).node_id)
        except NotFound as exc:
            raise UnresolvedXPath(str(path)) from exc
    spine: set[int] = {tree.root.node_id, tree.body.node_id}
    for node_id in keep_ids:
        spine.update(a.node_id for a in tree.ancestors(tree.node(node_id)))

    def build(node: DomNode) -> DomNode:
        if node.node_id in keep_ids:
            return _copy(node)
        children = [
            build(c)
            for c in node.children
            if c.node_id in keep_ids
            or c.node_id in spine
            or (c.kind == TEXT and not c.text.strip() and node is not tree.root)
        ]
        return replace(node, attributes=dict(node.attributes), children=children)

    merged = DomTree(build(tree.root), tree.source_length)
    cleaned, _ = lossless_clean(merged, tokenizer)
    return serialize(cleaned.root)


def _copy(node: DomNode) -> DomNode:
    if node.kind != ELEMENT:
        return replace(node)
    return replace(node, attributes=dict(node.attributes), children=[_copy(c) for c in node.children])


def prune_page(
    tree: DomTree,
    query: str,
    client: ModelClient | None,
    budget: int = DEFAULT_CHUNK_BUDGET,
    *,
    pruner_budget: int = DEFAULT_PRUNER_BUDGET,
    tokenizer: Tokenizer = DEFAULT_TOKENIZER,
    concurrency: int | None = None,
    enabled: bool = True,
    temperature: float = 0.0,
) -> PruneResult:
    """Chunk, decompose, prune every chunk and merge the survivors.

    ``tree`` must already be preprocessed.  With ``enabled=False`` the
    whole page passes through untouched (the no-pruner ablation).
    """
    whole = serialize(tree.root)
    tokens_before = tokenizer.count(whole)
    if not enabled:
        return PruneResult([], whole, tokens_before, tokens_before)

    chunks = chunk_blocks(tree, budget, tokenizer)
    minis = [decompose(c, tree, tokenizer) for c in chunks]

    def run(i: int) -> PruneDecision:
        if not minis[i]:
            return PruneDecision()
        return prune_chunk(
            chunks[i], minis[i], query, client,
            pruner_budget=pruner_budget, tokenizer=tokenizer, temperature=temperature,
        )

    workers = concurrency or getattr(client, "max_in_flight", 4)
    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            decisions = list(pool.map(run, range(len(chunks))))
    else:
        decisions = [run(i) for i in range(len(chunks))]

    kept = [minis[c][i].xpath for c, d in enumerate(decisions) for i in d.kept_indices]
    distilled = merge_kept(tree, kept, tokenizer)
    return PruneResult(
        kept_xpaths=kept,
        distilled_html=distilled,
        tokens_before=tokens_before,
        tokens_after=tokenizer.count(distilled),
        chunks=len(chunks),
        minichunks=sum(len(m) for m in minis),
        fail_open=sum(d.fail_open for d in decisions),
        decisions=decisions,
    )
