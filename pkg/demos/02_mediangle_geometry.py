"""Checking the mediangle axioms and reading geodesics off hyperplanes."""

from dyergeo import build_ball, check_all, compute_hyperplanes
from dyergeo.fixtures import fixture
from dyergeo.mediangle import FiniteGraph, check_triangle_condition, crossings
from dyergeo.words import DyerGroup

for name, radius in [("S3", 3), ("Z2", 4), ("GP34", 2), ("FIG1", 3)]:
    ball = build_ball(DyerGroup(fixture(name)), radius)
    reports = check_all(ball)
    summary = ", ".join(f"{k} {'ok' if r.passed else 'FAIL'}" for k, r in reports.items())
    print(f"{name} (R={radius}, {len(ball)} elements): {summary}")

# a pentagon is not a Cayley graph of a Dyer group, and it shows
rep = check_triangle_condition(FiniteGraph(5, [(i, (i + 1) % 5) for i in range(5)]))
print("pentagon:", rep.to_text().splitlines()[0], "first witness", rep.violations[0])

# in S3 the hexagon splits into three hyperplanes
G = DyerGroup(fixture("S3"))
ball = build_ball(G, 3)
hp = compute_hyperplanes(ball)
print("\nS3 hyperplanes:", len(hp))
for text in ["u v u", "u v u v"]:
    path = ball.path_from_word(G.parse_word(text))
    cs = crossings(path, hp)
    verdict = "repeats a class" if len(set(cs)) < len(cs) else "crosses each class once"
    print(f"  {text}: classes {cs} -> {verdict}")
