"""
Grounding generated values in the page
======================================

Each extracted value is matched back to the closest text run of the
page.  Near misses are replaced by the page text; values with no good
match are dropped.
"""

from axe import find_closest_node, gestalt_ratio, ground_schema, parse_html, repair_values

page = parse_html("""
<h1>Apple iPhone 16 Pro Max</h1>
<table>
  <tr><th>Price</th><td>$1,039.99</td></tr>
  <tr><th>Color</th><td>Desert Titanium</td></tr>
</table>
""")

# similarity is 2M / (|a| + |b|) over recursively matched blocks
print(gestalt_ratio("Desert Titanium", "Desert Titanum"))

match = find_closest_node(page, "Desert Titanum")
print(match.to_dict())

# a small model misspells one value and invents another
generated = {"Price": "$1,039.9", "Color": "Desert Titanum", "Brand": "Nokia"}
grounding = ground_schema(page, generated)
for key, m in grounding.items():
    print(f"{key:6s} found={m.found!s:5s} score={m.score:.3f} text={m.text!r}")

print(repair_values(generated, grounding))
