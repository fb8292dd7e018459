"""
Pruning a page to what a query needs
====================================

The pruner is shown every mini-chunk with its index and answers with the
indices to keep.  Here the rule-based oracle plays the model.
"""

from importlib import resources

from axe import parse_html, preprocess, prune_page
from axe.model_client import OraclePruner

html = (resources.files("axe") / "data" / "sample_product.html").read_text()
_, cleaned, _ = preprocess(parse_html(html))

result = prune_page(cleaned, "What is the price and the color?", OraclePruner(), 1000)
print(f"{result.chunks} chunks, {result.minichunks} mini-chunks, {len(result.kept_xpaths)} kept")
print(f"tokens {result.tokens_before} -> {result.tokens_after} ({100 * result.reduction:.1f}% removed)")
for path in result.kept_xpaths:
    print("  kept", path)

# the distilled page keeps source order and the ancestors of every kept node
print(result.distilled_html[:400])
