"""Noise stripping and lossless structural compression of parsed pages.

Two passes run before chunking:

``strip_noise``
    drops scripts, stylesheets, ``noscript`` blocks and comments, plus
    inline ``style`` and ``on*`` handler attributes.

``lossless_clean``
    collapses attribute-less wrapper chains and deletes empty elements
    while keeping the page's visible text byte-for-byte identical.

Both return new trees; surviving nodes keep their ids.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from axe.dom import COMMENT, ELEMENT, TEXT, DomNode, DomTree, serialize
from axe.tokens import DEFAULT_TOKENIZER, Tokenizer

NOISE_TAGS = frozenset({"script", "style", "link", "noscript"})

# Elements that are never merged away or deleted.  Collapsing any of
# these would change how the serialized page re-parses (table and list
# structure, form controls) or which namespace its content lives in.
PROTECTED_TAGS = frozenset(
    """
    html head body title h1 h2 h3 h4 h5 h6
    table caption colgroup col thead tbody tfoot tr td th
    ul ol li dl dt dd menu
    select option optgroup datalist textarea pre
    ruby rt rp picture video audio object map template iframe
    """.split()
)
# subtrees left untouched (foreign content and document metadata)
OPAQUE_TAGS = frozenset({"svg", "math", "head", "template"})
CONTENT_VOIDS = frozenset({"br", "hr"})


@dataclass
class CleanReport:
    removed_script_nodes: int = 0
    removed_style_nodes: int = 0
    merged_wrappers: int = 0
    removed_empty: int = 0
    tokens_before: int = 0
    tokens_after: int = 0


def _merge_text_runs(children: list[DomNode]) -> list[DomNode]:
    out: list[DomNode] = []
    for child in children:
        if child.kind == TEXT and out and out[-1].kind == TEXT:
            out[-1] = replace(out[-1], text=out[-1].text + child.text)
        else:
            out.append(child)
    return out


def _is_noise_attr(name: str) -> bool:
    return name == "style" or name.startswith("on")


def strip_noise(tree: DomTree, report: CleanReport | None = None) -> DomTree:
    """Remove scripts, CSS, ``noscript``, comments and inline handlers."""
    report = report if report is not None else CleanReport()

    def walk(node: DomNode) -> DomNode | None:
        if node.kind == COMMENT:
            return None
        if node.kind == TEXT:
            return replace(node)
        if node.tag in NOISE_TAGS:
            if node.tag == "script":
                report.removed_script_nodes += 1
            else:
                report.removed_style_nodes += 1
            return None
        kids = [k for k in (walk(c) for c in node.children) if k is not None]
        attrs = {k: v for k, v in node.attributes.items() if not _is_noise_attr(k)}
        return replace(node, attributes=attrs, children=_merge_text_runs(kids))

    return DomTree(walk(tree.root), tree.source_length)


def _is_blank(node: DomNode) -> bool:
    return node.kind == TEXT and not node.text.strip()


def lossless_clean(
    tree: DomTree, tokenizer: Tokenizer = DEFAULT_TOKENIZER
) -> tuple[DomTree, CleanReport]:
    """Collapse wrapper chains and drop empty elements without losing text.

    Returns the cleaned tree and a report whose token counts are measured
    on the serialized document before and after cleaning.
    """
    report = CleanReport()

    def walk(node: DomNode) -> list[DomNode]:
        if node.kind != ELEMENT:
            return [replace(node)] if node.kind == TEXT else []
        if node.tag in OPAQUE_TAGS:
            return [_copy(node)]
        kids: list[DomNode] = []
        for child in node.children:
            kids.extend(walk(child))
        el = replace(node, attributes=dict(node.attributes), children=_merge_text_runs(kids))
        if el.tag in PROTECTED_TAGS or el.attributes:
            return [el]
        if el.tag not in CONTENT_VOIDS and all(_is_blank(c) for c in el.children):
            report.removed_empty += 1
            # keep the whitespace so neighbouring words do not fuse
            return el.children
        elements = [c for c in el.children if c.kind == ELEMENT]
        if len(elements) == 1 and all(c.kind == ELEMENT or _is_blank(c) for c in el.children):
            report.merged_wrappers += 1
            return el.children
        return [el]

    # the root element is protected, so walk() hands back exactly one node
    (root,) = walk(tree.root)
    out = DomTree(root, tree.source_length)
    report.tokens_before = tokenizer.count(serialize(tree.root))
    report.tokens_after = tokenizer.count(serialize(out.root))
    return out, report


def _copy(node: DomNode) -> DomNode:
    return replace(
        node,
        attributes=dict(node.attributes),
        children=[_copy(c) for c in node.children if c.kind != COMMENT],
    )


def preprocess(
    tree: DomTree, tokenizer: Tokenizer = DEFAULT_TOKENIZER
) -> tuple[DomTree, DomTree, CleanReport]:
    """Run both passes.

    Returns ``(stripped, cleaned, report)``: the noise-free tree (whose
    XPaths still address the original page) and the compressed tree fed
    to chunking.  ``report.tokens_before`` is the raw page count.
    """
    report = CleanReport()
    stripped = strip_noise(tree, report)
    cleaned, clean_report = lossless_clean(stripped, tokenizer)
    report.merged_wrappers = clean_report.merged_wrappers
    report.removed_empty = clean_report.removed_empty
    report.tokens_before = tokenizer.count(serialize(tree.root))
    report.tokens_after = clean_report.tokens_after
    return stripped, cleaned, report
