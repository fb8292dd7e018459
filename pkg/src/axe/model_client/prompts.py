"""The three prompt templates, stored byte-for-byte as text resources.

Rendering substitutes ``{query}`` and ``{content}`` in a single pass and
touches nothing else; in particular the literal ``{{...}}`` braces in the
extractor output-format examples are sent to the model unchanged.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from axe.errors import MissingPlaceholder

PRUNER = "pruner"
SCHEMA_EXTRACTOR = "schema_extractor"
QA_EXTRACTOR = "qa_extractor"
TEMPLATE_NAMES = (PRUNER, SCHEMA_EXTRACTOR, QA_EXTRACTOR)

_PLACEHOLDER = re.compile(r"\{(query|content)\}")


@dataclass(frozen=True)
class PromptTemplate:
    name: str
    body: str

    def check(self) -> None:
        for name in ("query", "content"):
            if "{" + name + "}" not in self.body:
                raise MissingPlaceholder(f"template {self.name!r} has no {{{name}}} placeholder")

    def split(self) -> tuple[str, str, str]:
        """Return the literal text before, between and after the placeholders."""
        self.check()
        q = self.body.index("{query}")
        c = self.body.index("{content}")
        return self.body[:q], self.body[q + len("{query}") : c], self.body[c + len("{content}") :]


@lru_cache(maxsize=None)
def load_template(name: str) -> PromptTemplate:
    if name not in TEMPLATE_NAMES:
        raise KeyError(f"unknown template {name!r}")
    body = resources.files("axe.model_client").joinpath("templates", f"{name}.txt").read_text("utf-8")
    return PromptTemplate(name, body)


def render(template: PromptTemplate, query: str, content: str) -> str:
    if not query:
        raise ValueError("query must be non-empty")
    template.check()
    values = {"query": query, "content": content}
    return _PLACEHOLDER.sub(lambda m: values[m.group(1)], template.body)


def unrender(template: PromptTemplate, prompt: str) -> tuple[str, str] | None:
    """Recover ``(query, content)`` from a prompt rendered with ``template``.

    Returns None when the prompt was not produced by this template.  Used
    by the offline oracle clients, which only ever see prompt text.
    """
    before, middle, after = template.split()
    if not (prompt.startswith(before) and prompt.endswith(after)):
        return None
    inner = prompt[len(before) : len(prompt) - len(after)]
    cut = inner.find(middle)
    if cut < 0:
        return None
    return inner[:cut], inner[cut + len(middle) :]


def enumerate_chunks(htmls: list[str]) -> str:
    """Format mini-chunks as ``index: html`` lines for the pruner prompt.

    Line breaks inside a chunk are flattened so each chunk is one line.
    """
    return "\n".join(f"{i}: {' '.join(h.splitlines())}" for i, h in enumerate(htmls))
