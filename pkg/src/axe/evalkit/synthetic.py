"""Deterministic boilerplate-heavy pages with known attribute values.

Every page carries one vertical's four attributes as label/value pairs in
a table, a definition list or labelled ``div`` rows, buried in navigation,
sidebars, ads, scripts and filler prose.  Filler text is drawn from a
vocabulary that shares no word with any label or value, so a pruner that
keeps only label-bearing blocks discards almost the whole page.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass
from pathlib import Path

from axe.gxr import gestalt_ratio, normalize
from axe.model_client.oracle import LABEL_SIMILARITY

DEFAULT_SEED = 20240
PAGES_PER_VERTICAL = 8

FILLER = (
    "lorem ipsum sit amet consectetur adipiscing elit sed eiusmod tempor incididunt labore "
    "dolore magna aliqua enim minim veniam quis nostrud exercitation ullamco laboris nisi aliquip "
    "commodo consequat duis aute irure reprehenderit voluptate velit esse cillum fugiat nulla "
    "pariatur excepteur sint occaecat cupidatat proident sunt culpa officia deserunt mollit anim "
    "laborum curabitur pretium tincidunt lacus nunc pulvinar sapien ligula viverra maecenas "
    "accumsan tortor posuere vestibulum morbi blandit cursus risus ultrices venenatis"
).split()

VERTICALS: dict[str, tuple[tuple[str, ...], list[tuple[str, ...]]]] = {
    "product": (
        ("Product Title", "Price", "Manufacturer", "Color"),
        [
            ("Apple iPhone 16 Pro Max", "$1,039.99", "Apple", "Desert Titanium"),
            ("Galaxy S24 Ultra", "$899.00", "Samsung", "Titanium Violet"),
            ("Pixel 9 Pro Fold", "$1,499.00", "Google", "Obsidian"),
            ("WH-1000XM5 Headphones", "$348.50", "Sony", "Midnight Blue"),
            ("ThinkPad X1 Carbon", "$1,289.95", "Lenovo", "Deep Black"),
            ("Kindle Paperwhite Signature", "$189.99", "Amazon", "Agave Green"),
            ("Instant Pot Duo Plus", "$79.95", "Instant Brands", "Stainless Steel"),
            ("Roomba Combo j9", "$899.99", "iRobot", "Graphite"),
        ],
    ),
    "book": (
        ("Title", "Author", "Publisher", "ISBN"),
        [
            ("The Left Hand of Darkness", "Ursula K. Le Guin", "Ace Books", "978-0441478125"),
            ("Beloved", "Toni Morrison", "Alfred A. Knopf", "978-1400033416"),
            ("Invisible Cities", "Italo Calvino", "Harcourt Brace", "978-0156453806"),
            ("The Remains of the Day", "Kazuo Ishiguro", "Faber and Faber", "978-0679731726"),
            ("Middlemarch", "George Eliot", "Penguin Classics", "978-0141439549"),
            ("Dune", "Frank Herbert", "Chilton Books", "978-0441172719"),
            ("Things Fall Apart", "Chinua Achebe", "Heinemann", "978-0385474542"),
            ("Pedro Paramo", "Juan Rulfo", "Grove Press", "978-0802133908"),
        ],
    ),
    "job": (
        ("Job Title", "Company", "Location", "Salary"),
        [
            ("Senior Backend Engineer", "Northwind Traders", "Austin, TX", "$165,000"),
            ("Data Analyst", "Contoso Health", "Chicago, IL", "$92,500"),
            ("Product Designer", "Fabrikam Studios", "Portland, OR", "$128,000"),
            ("Site Reliability Engineer", "Tailspin Toys", "Denver, CO", "$150,000"),
            ("Technical Writer", "Wingtip Labs", "Boston, MA", "$88,000"),
            ("Machine Learning Scientist", "Adventure Works", "Seattle, WA", "$210,000"),
            ("Registered Nurse", "Lakeshore Clinic", "Madison, WI", "$81,200"),
            ("Warehouse Supervisor", "Blue Yonder Freight", "Reno, NV", "$67,400"),
        ],
    ),
    "movie": (
        ("Movie Title", "Director", "Genre", "Release Date"),
        [
            ("Spirited Away", "Hayao Miyazaki", "Animation", "July 20, 2001"),
            ("Parasite", "Bong Joon-ho", "Thriller", "May 30, 2019"),
            ("Arrival", "Denis Villeneuve", "Science Fiction", "November 11, 2016"),
            ("Amelie", "Jean-Pierre Jeunet", "Romantic Comedy", "April 25, 2001"),
            ("Mad Max Fury Road", "George Miller", "Action", "May 15, 2015"),
            ("Moonlight", "Barry Jenkins", "Drama", "October 21, 2016"),
            ("Coco", "Lee Unkrich", "Family", "November 22, 2017"),
            ("Roma", "Alfonso Cuaron", "Period Drama", "December 14, 2018"),
        ],
    ),
    "restaurant": (
        ("Restaurant Name", "Cuisine", "Address", "Phone"),
        [
            ("Golden Lotus", "Vietnamese", "412 Harbor Street", "(503) 555-0142"),
            ("Casa Oaxaca", "Mexican", "88 Mission Avenue", "(415) 555-0199"),
            ("Trattoria Bellini", "Italian", "27 Elm Row", "(617) 555-0113"),
            ("Sakura Tei", "Japanese", "903 Pine Court", "(206) 555-0178"),
            ("Le Petit Zinc", "French", "15 Rue Street", "(212) 555-0164"),
            ("Smoke and Oak", "Barbecue", "640 Ranch Road", "(512) 555-0127"),
            ("Spice Route", "Indian", "71 Market Lane", "(312) 555-0185"),
            ("Aegean Table", "Greek", "1200 Bay Drive", "(305) 555-0131"),
        ],
    ),
}

LAYOUTS = ("table", "dl", "rows")

# labels no page carries, for questions without an answer
UNANSWERABLE_KEYS = ("Warranty", "Rating", "Discount Code")

_WORD = re.compile(r"\w+")


def _words(text: str) -> set[str]:
    return set(_WORD.findall(text.lower()))


def _check_vocabulary():
    filler = set(FILLER)
    for keys, rows in VERTICALS.values():
        used = _words(" ".join(keys)) | _words(" ".join(v for row in rows for v in row))
        clash = used & filler
        if clash:
            raise AssertionError(f"filler vocabulary overlaps attributes: {sorted(clash)}")
        for key in keys:
            near = [w for w in filler if gestalt_ratio(w, normalize(key)) >= LABEL_SIMILARITY]
            if near:
                raise AssertionError(f"filler words {near} could pass for the label {key!r}")


@dataclass
class SyntheticPage:
    page_id: str
    vertical: str
    layout: str
    html: str
    values: dict[str, str]


class _Writer:
    def __init__(self, rng: random.Random):
        self.rng = rng

    def words(self, lo: int, hi: int) -> str:
        return " ".join(self.rng.choice(FILLER) for _ in range(self.rng.randint(lo, hi)))

    def sentence(self) -> str:
        s = self.words(6, 16)
        return s[0].upper() + s[1:] + "."

    def paragraph(self) -> str:
        return " ".join(self.sentence() for _ in range(self.rng.randint(3, 7)))

    def link(self) -> str:
        return f'<a href="/{self.rng.choice(FILLER)}" onclick="track(this)">{self.words(1, 3).title()}</a>'

    def nav(self) -> str:
        items = "".join(f"<li>{self.link()}</li>" for _ in range(self.rng.randint(5, 10)))
        return f'<div class="nav-wrap"><div><nav class="top" style="color: red"><ul>{items}</ul></nav></div></div>'

    def ad(self) -> str:
        return (
            f'<div class="ad" onmouseover="ads.show()"><div><div>'
            f"<script>window.ads = window.ads || {{slot: {self.rng.randint(1, 99)}}};</script>"
            f"<!-- ad slot {self.rng.randint(100, 999)} -->"
            f"<p>{self.sentence()}</p></div></div></div>"
        )

    def article(self) -> str:
        parts = [f"<h2>{self.words(2, 5).title()}</h2>"]
        parts += [f"<p>{self.paragraph()}</p>" for _ in range(self.rng.randint(2, 4))]
        return '<div class="article"><div>' + "".join(parts) + "</div></div>"

    def sidebar(self) -> str:
        links = "".join(f"<li>{self.link()}</li>" for _ in range(self.rng.randint(4, 8)))
        return f'<aside class="sidebar"><div><h3>{self.words(2, 3).title()}</h3><ul>{links}</ul><p>{self.paragraph()}</p></div></aside>'

    def footer(self) -> str:
        cols = "".join(
            f'<div class="col"><h4>{self.words(1, 2).title()}</h4><ul>'
            + "".join(f"<li>{self.link()}</li>" for _ in range(4))
            + "</ul></div>"
            for _ in range(3)
        )
        return f'<footer><div class="cols">{cols}</div><p>{self.sentence()}</p></footer>'


def _data_block(layout: str, values: dict[str, str]) -> str:
    if layout == "table":
        rows = "".join(f"<tr><th>{k}</th><td>{v}</td></tr>" for k, v in values.items())
        return f'<table class="specs"><tbody>{rows}</tbody></table>'
    if layout == "dl":
        items = "".join(f"<dt>{k}</dt><dd>{v}</dd>" for k, v in values.items())
        return f'<dl class="facts">{items}</dl>'
    rows = "".join(
        f'<div class="row"><span class="label">{k}:</span> <span class="value">{v}</span></div>'
        for k, v in values.items()
    )
    return f'<div class="details"><div>{rows}</div></div>'


def render_page(vertical: str, values: dict[str, str], layout: str, rng: random.Random, target_words: int) -> str:
    """One page: the data block surrounded by about ``target_words`` words of filler."""
    w = _Writer(rng)
    blocks = [w.article() for _ in range(3)]
    filler_words = sum(len(b.split()) for b in blocks)
    while filler_words < target_words:
        block = rng.choice((w.article, w.ad, w.sidebar, w.article))()
        blocks.append(block)
        filler_words += len(block.split())
    blocks.insert(rng.randint(1, len(blocks) - 1), f'<section class="main-{vertical}"><div>{_data_block(layout, values)}</div></section>')
    head = (
        f"<head><meta charset=\"utf-8\"><title>{w.words(2, 4).title()}</title>"
        f"<style>.ad {{ display: block; }} .row span {{ margin: {rng.randint(1, 9)}px; }}</style>"
        f'<link rel="stylesheet" href="/static/site.css">'
        f"<script>var analytics = {{id: {rng.randint(1000, 9999)}}};</script></head>"
    )
    body = (
        '<body onload="init()">' + w.nav() + "<!-- main content -->"
        '<div id="page"><div class="container"><div class="inner">' + "".join(blocks) + "</div></div></div>"
        + w.footer() + "<noscript>" + w.sentence() + "</noscript></body>"
    )
    return "<!DOCTYPE html>\n<html lang=\"en\">" + head + body + "</html>\n"


def generate_corpus(seed: int = DEFAULT_SEED, per_vertical: int = PAGES_PER_VERTICAL) -> list[SyntheticPage]:
    _check_vocabulary()
    rng = random.Random(seed)
    pages = []
    for vertical, (keys, rows) in VERTICALS.items():
        for i, row in enumerate(rows[:per_vertical]):
            values = dict(zip(keys, row))
            layout = LAYOUTS[(len(pages) + i) % len(LAYOUTS)]
            html = render_page(vertical, values, layout, rng, rng.randint(1900, 4000))
            for v in values.values():
                if v not in html:
                    raise AssertionError(f"value {v!r} not verbatim on page")
            pages.append(SyntheticPage(f"{vertical}-{i:02d}", vertical, layout, html, values))
    return pages


def schema_records(pages: list[SyntheticPage]) -> list[dict]:
    return [
        {
            "id": p.page_id,
            "page": f"pages/{p.page_id}.html",
            "schema": {k: "" for k in p.values},
            "gold": {k: [v] for k, v in p.values.items()},
        }
        for p in pages
    ]


def question_records(pages: list[SyntheticPage], seed: int = DEFAULT_SEED) -> list[dict]:
    """Twenty questions: eight lookups, four yes, four no and four unanswerable."""
    rng = random.Random(seed + 1)
    picks = rng.sample(pages, 20)
    records = []
    for n, page in enumerate(picks):
        keys = list(page.values)
        key = rng.choice(keys)
        ref = f"pages/{page.page_id}.html"
        if n < 8:
            q, gold = f"What is the {key}?", [page.values[key]]
        elif n < 12:
            q, gold = f"Is the {key} {page.values[key]}?", ["yes"]
        elif n < 16:
            _, rows = VERTICALS[page.vertical]
            page_words = _words(page.html)
            others = [r[keys.index(key)] for r in rows if not _words(r[keys.index(key)]) & page_words]
            q, gold = f"Is the {key} {rng.choice(others)}?", ["no"]
        else:
            q, gold = f"What is the {rng.choice(UNANSWERABLE_KEYS)}?", [None]
        records.append({"id": f"q{n:02d}", "page": ref, "question": q, "gold": gold})
    return records


def write_corpus(out_dir: str | Path, seed: int = DEFAULT_SEED) -> Path:
    """Write ``pages/``, ``dataset.jsonl`` and ``qa_dataset.jsonl`` under ``out_dir``."""
    out_dir = Path(out_dir)
    (out_dir / "pages").mkdir(parents=True, exist_ok=True)
    pages = generate_corpus(seed)
    for p in pages:
        (out_dir / "pages" / f"{p.page_id}.html").write_text(p.html, encoding="utf-8")
    for name, records in (("dataset.jsonl", schema_records(pages)), ("qa_dataset.jsonl", question_records(pages, seed))):
        with open(out_dir / name, "w", encoding="utf-8") as fh:
            for r in records:
                fh.write(json.dumps(r, ensure_ascii=False) + "\n")
    return out_dir


def bundled_corpus() -> Path:
    """Directory of the corpus shipped with the package."""
    return Path(__file__).resolve().parent.parent / "data" / "corpus"


if __name__ == "__main__":
    print(write_corpus(bundled_corpus()))
