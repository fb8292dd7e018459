import random

import pytest
from randhtml import random_html

from axe.dom import parse_html, serialize, visible_text
from axe.preprocess import lossless_clean, preprocess, strip_noise
from axe.tokens import DEFAULT_TOKENIZER


def body_html(tree):
    return "".join(serialize(c) for c in tree.body.children)


def test_strip_noise_drops_scripts():
    tree = strip_noise(parse_html("<div><script>x()</script><p>a</p></div>"))
    assert body_html(tree) == "<div><p>a</p></div>"


def test_strip_noise_drops_style_and_handlers():
    tree = strip_noise(parse_html('<p style="color:red" onclick="f()" class="k">a</p>'))
    assert body_html(tree) == '<p class="k">a</p>'


def test_strip_noise_drops_comments_link_noscript_and_merges_text():
    tree = strip_noise(parse_html('<div>a<!-- x -->b<noscript>n</noscript><link rel="x">c</div>'))
    div = tree.body.element_children()[0]
    assert [c.text for c in div.children] == ["abc"]


def test_strip_noise_on_clean_input_is_identity():
    html = '<div class="a"><p>x <b>y</b></p><ul><li>z</li></ul></div>'
    tree = parse_html(html)
    stripped = strip_noise(tree)
    assert serialize(stripped.root) == serialize(tree.root)
    assert [n.node_id for n in stripped.iter()] == [n.node_id for n in tree.iter()]


def test_strip_noise_counts():
    _, _, report = preprocess(parse_html("<script>a</script><script>b</script><style>c</style><p>x</p>"))
    assert report.removed_script_nodes == 2
    assert report.removed_style_nodes == 1


def test_wrapper_chain_collapses():
    tree = parse_html("<div><div><span>a</span></div></div>")
    cleaned, report = lossless_clean(tree)
    assert body_html(cleaned) == "<span>a</span>"
    assert report.merged_wrappers == 2
    assert report.tokens_after < report.tokens_before


def test_attribute_blocks_are_kept():
    tree = parse_html('<div class="k"><p>a</p></div>')
    cleaned, report = lossless_clean(tree)
    assert body_html(cleaned) == '<div class="k"><p>a</p></div>'
    assert report.merged_wrappers == 0


def test_empty_elements_removed():
    cleaned, report = lossless_clean(parse_html("<div></div><p>a</p>"))
    assert body_html(cleaned) == "<p>a</p>"
    assert report.removed_empty == 1


def test_whitespace_between_words_survives_removal():
    cleaned, _ = lossless_clean(parse_html("<p>a<span> </span>b</p>"))
    assert visible_text(cleaned.body) == "a b"


def test_structure_tags_are_protected():
    html = "<table><tbody><tr><td></td><td>x</td></tr></tbody></table><ul><li></li></ul><h2></h2>"
    cleaned, _ = lossless_clean(parse_html(html))
    out = body_html(cleaned)
    assert out == html


def test_line_breaks_are_content():
    cleaned, _ = lossless_clean(parse_html("<p>a<br>b</p><div><br></div>"))
    assert cleaned.body.element_children()[0].element_children()[0].tag == "br"
    assert body_html(cleaned).count("<br>") == 2


def test_svg_left_alone():
    html = "<svg><g><g><path></path></g></g></svg>"
    cleaned, _ = lossless_clean(parse_html(html))
    assert body_html(cleaned) == "<svg><g><g><path></path></g></g></svg>"


def test_cleaned_ids_come_from_source():
    tree = parse_html("<div><div><p>a</p></div></div>")
    cleaned, _ = lossless_clean(tree)
    source_ids = {n.node_id for n in tree.iter()}
    assert {n.node_id for n in cleaned.iter()} <= source_ids


def test_preprocess_returns_both_trees():
    stripped, cleaned, report = preprocess(parse_html("<div><div><script>s</script><p>a</p></div></div>"))
    assert body_html(stripped) == "<div><div><p>a</p></div></div>"
    assert body_html(cleaned) == "<p>a</p>"
    assert report.tokens_before >= report.tokens_after
    assert report.tokens_after == DEFAULT_TOKENIZER.count(serialize(cleaned.root))


def check_clean_invariants(html):
    stripped = strip_noise(parse_html(html))
    cleaned, report = lossless_clean(stripped)
    assert visible_text(cleaned.root) == visible_text(stripped.root)
    assert report.tokens_after <= report.tokens_before
    again, _ = lossless_clean(cleaned)
    assert serialize(again.root) == serialize(cleaned.root)
    # the cleaned page re-parses to the same text
    assert visible_text(parse_html(serialize(cleaned.root)).root) == visible_text(cleaned.root)


@pytest.mark.parametrize("seed", range(100))
def test_clean_invariants_random(seed):
    check_clean_invariants(random_html(random.Random(seed)))


def test_clean_invariants_real_pages(real_pages):
    assert len(real_pages) >= 20
    for page in real_pages:
        check_clean_invariants(page.read_text(encoding="utf-8", errors="replace"))
