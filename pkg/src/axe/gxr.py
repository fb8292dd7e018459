"""Grounded XPath Resolution.

Every value produced by the extractor is searched for in the source DOM.
Each element's own text is split at child-tag boundaries into chunks, and
each chunk is scored against the value on two axes: how many whitespace
tokens they share, and the Ratcliff/Obershelp ("gestalt") similarity of
the raw strings.  The winning chunk's text replaces the generated value
and its element's absolute XPath is reported alongside.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from axe.dom import TEXT, DomNode, DomTree, XPath, xpath_of

DEFAULT_THRESHOLD = 0.6


def normalize(s: str) -> str:
    return " ".join(s.lower().split())


def _longest_match(a, b, alo, ahi, blo, bhi, b2j):
    # Longest common substring of a[alo:ahi] and b[blo:bhi].  Ties go to
    # the earliest start in a, then the earliest start in b.
    besti, bestj, bestsize = alo, blo, 0
    j2len: dict[int, int] = {}
    for i in range(alo, ahi):
        newj2len = {}
        for j in b2j.get(a[i], ()):
            if j < blo:
                continue
            if j >= bhi:
                break
            k = newj2len[j] = j2len.get(j - 1, 0) + 1
            if k > bestsize:
                besti, bestj, bestsize = i - k + 1, j - k + 1, k
        j2len = newj2len
    return besti, bestj, bestsize


def matched_characters(a: str, b: str) -> int:
    """Total length of the Ratcliff/Obershelp matching blocks of a and b."""
    b2j: dict[str, list[int]] = {}
    for j, ch in enumerate(b):
        b2j.setdefault(ch, []).append(j)
    total = 0
    queue = [(0, len(a), 0, len(b))]
    while queue:
        alo, ahi, blo, bhi = queue.pop()
        i, j, k = _longest_match(a, b, alo, ahi, blo, bhi, b2j)
        if k:
            total += k
            if alo < i and blo < j:
                queue.append((alo, i, blo, j))
            if i + k < ahi and j + k < bhi:
                queue.append((i + k, ahi, j + k, bhi))
    return total


def gestalt_ratio(a: str, b: str) -> float:
    """Ratcliff/Obershelp similarity ``2*M / (len(a) + len(b))``.

    Argument order matters for tie-breaking, so callers comparing a DOM
    chunk to a search string always pass the chunk first.
    """
    length = len(a) + len(b)
    if not length:
        return 1.0
    return 2.0 * matched_characters(a, b) / length


def text_chunks(element: DomNode) -> list[str]:
    """The element's own text, split wherever a child element intervenes.

    Chunks are whitespace-stripped and blank ones are skipped.
    """
    chunks = []
    run: list[str] = []
    for child in element.children:
        if child.kind == TEXT:
            run.append(child.text)
            continue
        if run:
            chunks.append("".join(run))
            run = []
    if run:
        chunks.append("".join(run))
    return [c.strip() for c in chunks if c.strip()]


@dataclass(frozen=True)
class GroundedMatch:
    found: bool
    score: float = 0.0
    text: str | None = None
    xpath: XPath | None = None
    sub_index: int | None = None

    @classmethod
    def not_found(cls) -> GroundedMatch:
        return cls(False, 0.0)

    def to_dict(self) -> dict:
        if not self.found:
            return {"found": False, "score": 0.0}
        return {
            "found": True,
            "text": self.text,
            "xpath": str(self.xpath),
            "sub_index": self.sub_index,
            "score": self.score,
        }


class TextChunkIndex:
    """Per-element text chunks of a tree, in document order, built once."""

    def __init__(self, tree: DomTree):
        self.tree = tree
        self.entries: list[tuple[DomNode, list[tuple[str, str, frozenset[str]]]]] = []
        for element in tree.elements():
            chunks = [(c, normalize(c), frozenset(normalize(c).split())) for c in text_chunks(element)]
            if chunks:
                self.entries.append((element, chunks))


def find_closest_node(
    tree: DomTree,
    search: str,
    *,
    lexicographic: bool = False,
    index: TextChunkIndex | None = None,
) -> GroundedMatch:
    """Locate the text chunk in ``tree`` that best matches ``search``.

    A chunk is a candidate when the normalized search text occurs inside
    it or they share at least one token.  Candidates replace the running
    best when their similarity AND their token overlap are both at least
    the best seen so far, so later chunks win ties.  With
    ``lexicographic=True`` the best is instead the maximum of
    ``(similarity, overlap)`` and the earliest chunk wins ties.
    """
    s_norm = normalize(search)
    if not s_norm:
        return GroundedMatch.not_found()
    s_tokens = set(s_norm.split())
    index = index if index is not None else TextChunkIndex(tree)

    score_best, subset_best = 0.0, 0
    best = None
    for element, chunks in index.entries:
        for i, (c, c_norm, c_tokens) in enumerate(chunks):
            overlap = len(s_tokens & c_tokens)
            if not (s_norm in c_norm or overlap > 0):
                continue
            sim = gestalt_ratio(c, search)
            if lexicographic:
                better = best is None or (sim, overlap) > (score_best, subset_best)
            else:
                better = sim >= score_best and overlap >= subset_best
            if better:
                score_best, subset_best = sim, overlap
                best = (element, c, i)

    if best is None:
        return GroundedMatch.not_found()
    element, text, sub_index = best
    return GroundedMatch(True, score_best, text, xpath_of(index.tree, element.node_id), sub_index)


def ground_schema(
    tree: DomTree,
    filled: Mapping[str, str | None],
    threshold: float = DEFAULT_THRESHOLD,
    *,
    lexicographic: bool = False,
) -> dict[str, GroundedMatch]:
    """Ground every non-null value of a filled schema against ``tree``.

    Matches scoring under ``threshold`` are reported as not found.  Null
    values get no entry.  ``filled`` may be a plain mapping or anything
    with a ``values`` mapping (a FilledSchema).
    """
    values = filled if isinstance(filled, Mapping) else filled.values
    index = TextChunkIndex(tree)
    out = {}
    for key, value in values.items():
        if value is None:
            continue
        match = find_closest_node(tree, value, lexicographic=lexicographic, index=index)
        if match.found and match.score < threshold:
            match = GroundedMatch.not_found()
        out[key] = match
    return out


def repair_values(
    values: Mapping[str, str | None], grounding: Mapping[str, GroundedMatch]
) -> dict[str, str | None]:
    """Swap each grounded value for its source text; unfound values become null."""
    out = dict(values)
    for key, match in grounding.items():
        out[key] = match.text if match.found else None
    return out
