"""Shortening non-geodesic paths inside a tube of radius 2M."""

from dyergeo.fftp import (
    fftp_constant,
    path_from_word,
    shorten_by_transformations,
    shorten_within_tube,
    step_letters,
    verify_fftp,
)
from dyergeo.fixtures import fixture
from dyergeo.words import DyerGroup

G = DyerGroup(fixture("FIG1"))
print("2M =", fftp_constant(G))
for text in ["b c b c", "a b c a^-1 b", "a b c b a^-1 c", "c b a^1 c b c"]:
    p = path_from_word(G, G.parse_word(text))
    cert = shorten_within_tube(G, p)
    if cert is None:
        print(f"{text:>16} is already geodesic")
        continue
    q = step_letters(G, cert.replacement)
    print(f"{text:>16} -> {G.format_word(q) or 'e':<18} fellow constant {cert.fellow_constant}")

# the same shortening by elementary moves, with the distance each one costs
p = path_from_word(G, G.parse_word("c b a^1 c b c"))
q, trace = shorten_by_transformations(G, p)
print("\nmoves:", ", ".join(f"{r.tag}({r.constant})" for r in trace))

print()
print(verify_fftp(G, 5, transforms=True).to_text())
