"""Ordered DOM tree, absolute positional XPaths and HTML serialization.

Parsing is delegated to html5lib, which implements the WHATWG error
recovery rules (unclosed tags, missing ``html``/``body`` wrappers,
misnested formatting elements).  The parsed tree is converted once into
plain :class:`DomNode` objects so that every later stage works on a small,
predictable structure with stable integer ids.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import Iterator

import html5lib

from axe.errors import EmptyInput, InvalidXPath, NotAnElement, NotFound, UnknownNode

ELEMENT = "element"
TEXT = "text"
COMMENT = "comment"

VOID_ELEMENTS = frozenset(
    "area base basefont bgsound br col embed frame hr img input keygen link "
    "meta param source track wbr".split()
)
RAW_TEXT_ELEMENTS = frozenset("script style xmp iframe noembed noframes plaintext".split())

_NS_PREFIX = {
    "http://www.w3.org/1999/xlink": "xlink",
    "http://www.w3.org/XML/1998/namespace": "xml",
    "http://www.w3.org/2000/xmlns/": "xmlns",
}


@dataclass(eq=False)
class DomNode:
    kind: str
    node_id: int
    tag: str | None = None
    attributes: dict[str, str] = field(default_factory=dict)
    text: str | None = None
    children: list[DomNode] = field(default_factory=list)

    @property
    def is_element(self) -> bool:
        return self.kind == ELEMENT

    @property
    def is_text(self) -> bool:
        return self.kind == TEXT

    def element_children(self) -> list[DomNode]:
        return [c for c in self.children if c.kind == ELEMENT]

    def iter(self) -> Iterator[DomNode]:
        """Pre-order (document order) walk of this node and its descendants."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def __repr__(self) -> str:
        if self.kind == ELEMENT:
            return f"<DomNode #{self.node_id} <{self.tag}> {len(self.children)} children>"
        return f"<DomNode #{self.node_id} {self.kind} {self.text!r:.40}>"


class DomTree:
    """A parsed document rooted at its ``html`` element.

    Trees are treated as immutable once built; transforms in
    :mod:`axe.preprocess` build new trees that reuse the ids of the nodes
    they keep.
    """

    def __init__(self, root: DomNode, source_length: int = 0):
        if root.kind != ELEMENT:
            raise ValueError("tree root must be an element")
        self.root = root
        self.source_length = source_length
        self._nodes: dict[int, DomNode] = {}
        self._parent: dict[int, DomNode | None] = {root.node_id: None}
        stack = [root]
        while stack:
            node = stack.pop()
            if node.node_id in self._nodes:
                raise ValueError(f"node id {node.node_id} appears twice")
            self._nodes[node.node_id] = node
            for child in node.children:
                self._parent[child.node_id] = node
                stack.append(child)

    def __contains__(self, node_id: int) -> bool:
        return node_id in self._nodes

    def __len__(self) -> int:
        return len(self._nodes)

    def node(self, node_id: int) -> DomNode:
        try:
            return self._nodes[node_id]
        except KeyError:
            raise UnknownNode(node_id) from None

    def parent(self, node: DomNode | int) -> DomNode | None:
        node_id = node if isinstance(node, int) else node.node_id
        if node_id not in self._parent:
            raise UnknownNode(node_id)
        return self._parent[node_id]

    def ancestors(self, node: DomNode) -> list[DomNode]:
        """Ancestors of ``node``, nearest first."""
        out = []
        parent = self.parent(node)
        while parent is not None:
            out.append(parent)
            parent = self.parent(parent)
        return out

    def iter(self) -> Iterator[DomNode]:
        return self.root.iter()

    def elements(self) -> Iterator[DomNode]:
        return (n for n in self.root.iter() if n.kind == ELEMENT)

    @property
    def max_id(self) -> int:
        return max(self._nodes)

    @property
    def body(self) -> DomNode:
        for child in self.root.children:
            if child.kind == ELEMENT and child.tag == "body":
                return child
        raise NotFound("document has no body element")

    @property
    def head(self) -> DomNode | None:
        for child in self.root.children:
            if child.kind == ELEMENT and child.tag == "head":
                return child
        return None


@dataclass(frozen=True)
class XPath:
    """Absolute XPath made only of ``tag[index]`` steps (1-based index)."""

    steps: tuple[tuple[str, int], ...]

    _STEP = re.compile(r"^(.+)\[([0-9]+)\]$", re.S)

    def __post_init__(self):
        for tag, index in self.steps:
            if not tag or index < 1:
                raise InvalidXPath(f"bad step {tag!r}[{index}]")

    def __str__(self) -> str:
        return "".join(f"/{tag}[{index}]" for tag, index in self.steps)

    @classmethod
    def parse(cls, text: str) -> XPath:
        if not text.startswith("/"):
            raise InvalidXPath(f"not an absolute xpath: {text!r}")
        steps = []
        for raw in text[1:].split("/"):
            m = cls._STEP.match(raw)
            if m is None:
                raise InvalidXPath(f"bad step {raw!r} in {text!r}")
            steps.append((m.group(1), int(m.group(2))))
        return cls(tuple(steps))

    def is_ancestor_of(self, other: XPath) -> bool:
        return len(self.steps) < len(other.steps) and other.steps[: len(self.steps)] == self.steps


def _qualified(name: str) -> str:
    if name.startswith("{"):
        ns, _, local = name[1:].partition("}")
        prefix = _NS_PREFIX.get(ns)
        name = f"{prefix}:{local}" if prefix else local
    return name.lower()


def parse_html(html: str) -> DomTree:
    """Parse (possibly malformed) HTML into a :class:`DomTree`."""
    if not html or not html.strip():
        raise EmptyInput("cannot parse empty HTML")
    etree_root = html5lib.parse(html, treebuilder="etree", namespaceHTMLElements=False)

    counter = iter(range(1 << 62))

    def make_text(data: str) -> DomNode:
        return DomNode(TEXT, next(counter), text=data)

    def make(el) -> DomNode:
        if el.tag is ET.Comment:
            return DomNode(COMMENT, next(counter), text=el.text or "")
        attrs = {_qualified(k): v for k, v in el.attrib.items()}
        return DomNode(ELEMENT, next(counter), tag=_qualified(el.tag), attributes=attrs)

    root = make(etree_root)
    # ids are handed out in document order: a node, then its text, then children
    stack = [(etree_root, root)]
    while stack:
        el, node = stack.pop()
        if node.kind != ELEMENT:
            continue
        if el.text:
            node.children.append(make_text(el.text))
        pending = []
        for child_el in el:
            child = make(child_el)
            node.children.append(child)
            pending.append((child_el, child))
            if child_el.tail:
                node.children.append(make_text(child_el.tail))
        stack.extend(reversed(pending))
    _renumber(root)
    return DomTree(root, source_length=len(html))


def _renumber(root: DomNode) -> None:
    for i, node in enumerate(root.iter()):
        node.node_id = i


def xpath_of(tree: DomTree, node_id: int) -> XPath:
    node = tree.node(node_id)
    if node.kind != ELEMENT:
        raise NotAnElement(f"node {node_id} is a {node.kind} node")
    steps = []
    while True:
        parent = tree.parent(node)
        if parent is None:
            steps.append((node.tag, 1))
            break
        index = 0
        for sibling in parent.children:
            if sibling.kind == ELEMENT and sibling.tag == node.tag:
                index += 1
                if sibling is node:
                    break
        steps.append((node.tag, index))
        node = parent
    return XPath(tuple(reversed(steps)))


def resolve_xpath(tree: DomTree, path: XPath | str) -> DomNode:
    if isinstance(path, str):
        path = XPath.parse(path)
    if not path.steps:
        raise NotFound("empty xpath")
    (tag, index), rest = path.steps[0], path.steps[1:]
    if tag != tree.root.tag or index != 1:
        raise NotFound(f"{path}: root is /{tree.root.tag}[1]")
    node = tree.root
    for tag, index in rest:
        same = [c for c in node.children if c.kind == ELEMENT and c.tag == tag]
        if index > len(same):
            raise NotFound(f"{path}: no {tag}[{index}] under {node.tag}")
        node = same[index - 1]
    return node


def _escape_text(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _escape_attr(s: str) -> str:
    return s.replace("&", "&amp;").replace('"', "&quot;")


def start_tag(node: DomNode) -> str:
    attrs = "".join(f' {k}="{_escape_attr(v)}"' for k, v in node.attributes.items())
    return f"<{node.tag}{attrs}>"


def serialize(node: DomNode) -> str:
    """Serialize a node and its subtree to HTML; comments are dropped."""
    out: list[str] = []
    # stack entries are nodes to open, or closing-tag strings
    stack: list[DomNode | str] = [node]
    raw_depth: list[bool] = []
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
            raw_depth.pop()
            continue
        if item.kind == TEXT:
            raw = bool(raw_depth) and raw_depth[-1]
            out.append(item.text if raw else _escape_text(item.text))
        elif item.kind == ELEMENT:
            out.append(start_tag(item))
            if item.tag in VOID_ELEMENTS:
                continue
            if item.tag in ("pre", "textarea", "listing"):
                first = next((c for c in item.children if c.kind != COMMENT), None)
                if first is not None and first.kind == TEXT and first.text.startswith("\n"):
                    out.append("\n")
            raw_depth.append(item.tag in RAW_TEXT_ELEMENTS)
            stack.append(f"</{item.tag}>")
            stack.extend(reversed(item.children))
    return "".join(out)


def text_nodes(node: DomNode) -> list[DomNode]:
    return [n for n in node.iter() if n.kind == TEXT]


def collapse_ws(s: str) -> str:
    return " ".join(s.split())


def visible_text(node: DomNode) -> str:
    if node.kind == TEXT:
        return collapse_ws(node.text)
    return collapse_ws("".join(n.text for n in text_nodes(node)))


def has_direct_text(node: DomNode) -> bool:
    """True when the element carries non-whitespace text of its own."""
    return any(c.kind == TEXT and c.text.strip() for c in node.children)
