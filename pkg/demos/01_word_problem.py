"""Normal forms in the Dyer group of a small non-Coxeter graph.

The graph has an infinite-order vertex a commuting with an involution b,
and b generates S3 together with a second involution c (edge label 3).
"""

from pathlib import Path

from dyergeo import DyerGroup, classify, enumerate_letters, parse_dyer_graph

graph = parse_dyer_graph((Path(__file__).parent / "graphs" / "fig1.dyer").read_text())
G = DyerGroup(graph)
print("class:", classify(graph).value)
print("alphabet:", G.format_word(range(len(enumerate_letters(graph)))))

for text in ["b a^1", "c b c", "b c b", "a b a^-1 c", "b c b c b c", "a^2 b a^-3 b"]:
    w = G.parse_word(text)
    nf = G.normal_form(w)
    print(f"{text:>14}  ->  {G.format_word(nf) or 'e'}   (length {len(nf)})")

# commutations and braid flips move between geodesic spellings of one element
w = G.parse_word("b c b a^1")
print("\nspellings of", G.format_word(w) + ":")
for x in sorted(G.closure(w)):
    print("  ", G.format_word(x))
