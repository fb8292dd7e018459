"""Random HTML pages for property tests, plus an independent grounding oracle.

The oracle works straight off html5lib's ElementTree output and difflib,
sharing no code with the package beyond the HTML parser itself.
"""

from __future__ import annotations

import difflib
import random

import html5lib

WORDS = (
    "apple iphone 16 pro max desert titanium price $1,039.99 color black blue "
    "book author page lorem ipsum dolor 42 2024 x y a the of and"
).split()
SPACES = (" ", " ", " ", "  ", "\n", "\t", " ")

BLOCK = ("div", "p", "section", "article", "h1", "h2", "h3", "blockquote", "header", "footer", "nav", "aside")
INLINE = ("span", "a", "b", "i", "em", "strong", "small", "code", "label")
VOID = ("br", "hr", "img", "input")
NOISE = ("script", "style", "noscript")
ATTRS = (("class", "box"), ("id", "n{}"), ("href", "/x?a=1&b=2"), ("title", 'say "hi"'), ("style", "color:red"),
         ("onclick", "go()"), ("data-k", "v"))


def _text(rng: random.Random, lo: int = 1, hi: int = 5) -> str:
    words = [rng.choice(WORDS) for _ in range(rng.randint(lo, hi))]
    out = ""
    for w in words:
        out += w + rng.choice(SPACES)
    if rng.random() < 0.3:
        out = rng.choice(SPACES) + out
    if rng.random() < 0.15:
        out = out.replace("&", "&amp;") + " &lt;tag&gt; &amp; more"
    return out


def _attrs(rng: random.Random, noisy: bool) -> str:
    out = ""
    for name, value in rng.sample(ATTRS, rng.randint(0, 2)):
        if not noisy and name in ("style", "onclick"):
            continue
        value = value.format(rng.randint(0, 99)).replace("&", "&amp;").replace('"', "&quot;")
        out += f' {name}="{value}"'
    return out


class _Gen:
    def __init__(self, rng: random.Random, max_nodes: int, noisy: bool, comments: bool):
        self.rng = rng
        self.left = max_nodes
        self.noisy = noisy
        self.comments = comments

    def children(self, depth: int, inline_only: bool) -> str:
        rng = self.rng
        parts = []
        for _ in range(rng.randint(0, 5)):
            if self.left <= 0:
                break
            r = rng.random()
            self.left -= 1
            if r < 0.35:
                parts.append(_text(rng))
            elif r < 0.45 and self.comments:
                parts.append(f"<!-- {rng.choice(WORDS)} -->")
            elif r < 0.5 and self.noisy:
                tag = rng.choice(NOISE)
                body = "var x = 1 < 2;" if tag == "script" else "p { color: red }"
                parts.append(f"<{tag}>{body if tag != 'noscript' else _text(rng)}</{tag}>")
            elif r < 0.55:
                parts.append(f"<{rng.choice(VOID)}{_attrs(rng, self.noisy)}>")
            elif r < 0.75 or inline_only or depth > 7:
                tag = rng.choice(INLINE)
                parts.append(f"<{tag}{_attrs(rng, self.noisy)}>{self.children(depth + 1, True)}</{tag}>")
            else:
                parts.append(self.block(depth + 1))
        return "".join(parts)

    def block(self, depth: int) -> str:
        rng = self.rng
        r = rng.random()
        if r < 0.1:
            items = "".join(f"<li>{self.children(depth + 1, False)}</li>" for _ in range(rng.randint(1, 4)))
            self.left -= 2
            tag = rng.choice(("ul", "ol"))
            return f"<{tag}>{items}</{tag}>"
        if r < 0.18:
            rows = "".join(
                "<tr>" + "".join(f"<td>{self.children(depth + 1, True)}</td>" for _ in range(rng.randint(1, 3))) + "</tr>"
                for _ in range(rng.randint(1, 3))
            )
            self.left -= 3
            return f"<table><tbody>{rows}</tbody></table>"
        if r < 0.22:
            items = "".join(f"<dt>{_text(rng)}</dt><dd>{self.children(depth + 1, True)}</dd>" for _ in range(rng.randint(1, 3)))
            return f"<dl>{items}</dl>"
        if r < 0.25:
            return f"<pre>\n{_text(rng)}\n  {_text(rng)}</pre>"
        tag = rng.choice(BLOCK)
        if tag in ("h1", "h2", "h3"):
            return f"<{tag}{_attrs(rng, self.noisy)}>{self.children(depth + 1, True)}</{tag}>"
        return f"<{tag}{_attrs(rng, self.noisy)}>{self.children(depth, False)}</{tag}>"


def random_html(rng: random.Random, max_nodes: int = 200, *, noisy: bool = True, comments: bool = True) -> str:
    """A random page of at most about ``max_nodes`` nodes."""
    gen = _Gen(rng, max_nodes - 4, noisy, comments)
    title = f"<title>{_text(rng)}</title>" if rng.random() < 0.5 else ""
    head = f"<head>{title}{'<style>b{}</style>' if noisy else ''}</head>"
    body = []
    while gen.left > 0 and len(body) < 12:
        body.append(gen.block(0) if rng.random() < 0.7 else _text(rng))
        gen.left -= 1
    return f"<!DOCTYPE html><html>{head}<body>{''.join(body)}</body></html>"


# independent grounding oracle --------------------------------------------


def _norm(s: str) -> str:
    return " ".join(s.lower().split())


def reference_ratio(a: str, b: str) -> float:
    return difflib.SequenceMatcher(None, a, b, autojunk=False).ratio()


def parse(html: str):
    return html5lib.parse(html, treebuilder="etree", namespaceHTMLElements=False)


def _root(page):
    return parse(page) if isinstance(page, str) else page


def _elements_with_paths(root):
    """(xpath, element) pairs in document order, positional among same-tag siblings."""
    out = []
    stack = [(root, f"/{root.tag}[1]")]
    while stack:
        el, path = stack.pop()
        out.append((path, el))
        counts: dict[str, int] = {}
        kids = []
        for child in el:
            if not isinstance(child.tag, str):
                continue
            counts[child.tag] = counts.get(child.tag, 0) + 1
            kids.append((child, f"{path}/{child.tag}[{counts[child.tag]}]"))
        stack.extend((c, p) for c, p in reversed(kids))
    return out


def _chunks(el) -> list[str]:
    pieces = [el.text or ""] + [child.tail or "" for child in el]
    return [p.strip() for p in pieces if p.strip()]


def candidates(page, search: str) -> list[tuple[float, int, str, str, int]]:
    """Every (sim, overlap, xpath, text, sub_index) candidate, in document order.

    ``page`` is HTML text or a tree from :func:`parse`.
    """
    root = _root(page)
    s_norm = _norm(search)
    s_tokens = set(s_norm.split())
    out = []
    for path, el in _elements_with_paths(root):
        for i, chunk in enumerate(_chunks(el)):
            c_norm = _norm(chunk)
            overlap = len(s_tokens & set(c_norm.split()))
            if s_norm in c_norm or overlap > 0:
                out.append((reference_ratio(chunk, search), overlap, path, chunk, i))
    return out


def oracle_find(page, search: str, lexicographic: bool = False):
    """(text, xpath, sub_index, score) of the winning chunk, or None."""
    if not _norm(search):
        return None
    cands = candidates(page, search)
    if not cands:
        return None
    if lexicographic:
        # highest (sim, overlap); earliest in document order on ties
        best = max(enumerate(cands), key=lambda e: (e[1][0], e[1][1], -e[0]))[1]
    else:
        best, sim_best, ov_best = None, 0.0, 0
        for cand in cands:
            if cand[0] >= sim_best and cand[1] >= ov_best:
                best, sim_best, ov_best = cand, cand[0], cand[1]
        if best is None:
            return None
    return best[3], best[2], best[4], best[0]


def search_strings(page, rng: random.Random, n: int = 5) -> list[str]:
    """A mix of exact chunks, corrupted chunks, fragments and absent text."""
    root = _root(page)
    chunks = [c for _, el in _elements_with_paths(root) for c in _chunks(el)]
    out = []
    for k in range(n):
        kind = k % 5 if chunks else 4
        if kind == 0:
            s = rng.choice(chunks)
        elif kind == 1:
            s = list(rng.choice(chunks))
            s[rng.randrange(len(s))] = rng.choice("xyz0")
            s = "".join(s)
        elif kind == 2:
            c = rng.choice(chunks)
            i = rng.randrange(len(c))
            s = c[i : i + rng.randint(1, 20)]
        elif kind == 3:
            s = " ".join(rng.choice(WORDS) for _ in range(rng.randint(1, 4)))
        else:
            s = rng.choice(("", "   ", "zzz qqq", "Apple iPhone", "$1,039.99"))
        out.append(s[:64])
    return out


def node_count(page) -> int:
    """Elements, comments and text runs of a parsed page."""
    root = _root(page)
    return sum(1 + bool((el.text or "").strip()) + bool((el.tail or "").strip()) for el in root.iter())



def bounded_page(rng: random.Random, limit: int = 200, **kwargs) -> str:
    """A random page with at most ``limit`` nodes (regenerated until it fits)."""
    while True:
        html = random_html(rng, max_nodes=min(limit, 160), **kwargs)
        if node_count(html) <= limit:
            return html
