"""Token-budgeted block chunking and atomic mini-chunk decomposition."""

from __future__ import annotations

from dataclasses import dataclass

from axe.dom import ELEMENT, DomNode, DomTree, XPath, has_direct_text, resolve_xpath, serialize, visible_text, xpath_of
from axe.errors import BudgetTooSmall
from axe.tokens import DEFAULT_TOKENIZER, ApproxTokenizer, EncoderTokenizer, Tokenizer

__all__ = [
    "ApproxTokenizer",
    "EncoderTokenizer",
    "Tokenizer",
    "Chunk",
    "MiniChunk",
    "chunk_blocks",
    "decompose",
    "is_atomic",
    "MIN_BUDGET",
    "DEFAULT_CHUNK_BUDGET",
    "DEFAULT_PRUNER_BUDGET",
]

MIN_BUDGET = 64
DEFAULT_CHUNK_BUDGET = 4000
DEFAULT_PRUNER_BUDGET = 3000

BLOCK_TAGS = frozenset(
    """
    p div section article h1 h2 h3 h4 h5 h6 table ul ol li dl dt dd pre
    blockquote header footer nav aside form figure
    main address fieldset details summary figcaption hgroup menu center dialog search
    """.split()
)
ATOMIC_TAGS = frozenset({"table", "ul", "ol", "dl", "pre", "blockquote"})


@dataclass(frozen=True)
class Chunk:
    """A run of consecutive sibling subtrees that fits the token budget.

    ``root_xpath`` addresses the first subtree; ``member_xpaths`` lists all
    of them in document order.
    """

    index: int
    html: str
    token_count: int
    root_xpath: XPath
    member_xpaths: tuple[XPath, ...]


@dataclass(frozen=True)
class MiniChunk:
    xpath: XPath
    html: str
    token_count: int
    parent_chunk: int


def _has_block_descendant(node: DomNode) -> bool:
    return any(n.kind == ELEMENT and n.tag in BLOCK_TAGS for n in node.iter() if n is not node)


def is_atomic(node: DomNode) -> bool:
    """Whether a mini-chunk should stop at ``node`` rather than descend.

    Tables, lists, ``pre`` and ``blockquote`` are atomic; so is any element
    with no block-level descendants (a text block).  An element with its
    own non-blank text is also atomic, since splitting it would orphan
    that text.
    """
    return node.tag in ATOMIC_TAGS or has_direct_text(node) or not _has_block_descendant(node)


def _indivisible(node: DomNode) -> bool:
    return node.tag in ATOMIC_TAGS or has_direct_text(node) or not node.element_children()


def chunk_blocks(
    tree: DomTree, budget: int = DEFAULT_CHUNK_BUDGET, tokenizer: Tokenizer = DEFAULT_TOKENIZER
) -> list[Chunk]:
    """Greedy top-down split of the document body into budgeted chunks.

    A subtree that fits becomes (part of) one chunk; consecutive fitting
    siblings are grouped while their joint count fits.  Oversized
    indivisible subtrees become a chunk of their own.
    """
    if budget < MIN_BUDGET:
        raise BudgetTooSmall(f"budget {budget} < {MIN_BUDGET}")
    groups: list[list[DomNode]] = []
    cache: dict[int, str] = {}

    def html_of(node: DomNode) -> str:
        if node.node_id not in cache:
            cache[node.node_id] = serialize(node)
        return cache[node.node_id]

    def split(node: DomNode) -> None:
        group: list[DomNode] = []
        group_html = ""
        for child in node.element_children():
            child_html = html_of(child)
            if tokenizer.count(child_html) <= budget:
                if group and tokenizer.count(group_html + child_html) <= budget:
                    group.append(child)
                    group_html += child_html
                else:
                    if group:
                        groups.append(group)
                    group, group_html = [child], child_html
                continue
            if group:
                groups.append(group)
                group, group_html = [], ""
            if _indivisible(child):
                groups.append([child])
            else:
                split(child)
        if group:
            groups.append(group)

    body = tree.body
    if tokenizer.count(html_of(body)) <= budget or _indivisible(body):
        groups.append([body])
    else:
        split(body)

    chunks = []
    for i, members in enumerate(groups):
        html = "".join(html_of(m) for m in members)
        xpaths = tuple(xpath_of(tree, m.node_id) for m in members)
        chunks.append(Chunk(i, html, tokenizer.count(html), xpaths[0], xpaths))
    return chunks


def atomic_units(node: DomNode) -> list[DomNode]:
    """Maximal atomic descendants of ``node`` (inclusive) that carry text."""
    out: list[DomNode] = []
    stack = [node]
    while stack:
        current = stack.pop()
        if is_atomic(current):
            if visible_text(current):
                out.append(current)
        else:
            stack.extend(reversed(current.element_children()))
    return out


def decompose(
    chunk: Chunk, tree: DomTree, tokenizer: Tokenizer = DEFAULT_TOKENIZER
) -> list[MiniChunk]:
    minis = []
    for member in chunk.member_xpaths:
        for node in atomic_units(resolve_xpath(tree, member)):
            html = serialize(node)
            minis.append(MiniChunk(xpath_of(tree, node.node_id), html, tokenizer.count(html), chunk.index))
    return minis
