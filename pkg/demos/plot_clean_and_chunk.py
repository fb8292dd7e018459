"""
Cleaning and chunking a page
============================

Strip scripts and styling, collapse wrapper divs without changing the
visible text, then cut the page into budget-sized chunks.
"""

from importlib import resources

from axe import chunk_blocks, decompose, parse_html, preprocess, visible_text

html = (resources.files("axe") / "data" / "sample_product.html").read_text()

# two trees come back: noise-free for grounding, fully cleaned for the model
stripped, cleaned, report = preprocess(parse_html(html))
print(f"raw tokens      {report.tokens_before}")
print(f"cleaned tokens  {report.tokens_after}")
print(f"scripts removed {report.removed_script_nodes}, wrappers merged {report.merged_wrappers}")

# the cleaning is lossless
assert visible_text(cleaned.root) == visible_text(stripped.root)

# chunks are groups of adjacent blocks; mini-chunks are what the pruner sees
chunks = chunk_blocks(cleaned, 1000)
for chunk in chunks:
    minis = decompose(chunk, cleaned)
    print(f"chunk {chunk.index}: {chunk.token_count:5d} tokens, {len(minis):3d} mini-chunks at {chunk.root_xpath}")
