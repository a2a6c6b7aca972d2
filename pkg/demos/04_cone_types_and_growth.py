"""Cone types, the geodesic automaton and growth series."""

from dyergeo import cones
from dyergeo.fixtures import fixture
from dyergeo.words import DyerGroup

for name in ["Zline", "C5cyc", "S3", "Z2", "GP34"]:
    G = DyerGroup(fixture(name))
    a = cones.build_geodesic_automaton(G)
    m = cones.minimize(a)
    num, den = cones.growth_rational(m, cancel=True)
    print(
        f"{name:>6}: {len(a):3d} profiles, {len(m):2d} cone types, "
        f"geodesic growth {cones.geodesic_growth(m, 7)}, "
        f"rational ({cones.format_polynomial(num)}) / ({cones.format_polynomial(den)})"
    )

print("\nZ2 minimized automaton:")
G = DyerGroup(fixture("Z2"))
print(cones.minimize(cones.build_geodesic_automaton(G)).to_table(G))

# FIG1 has profile pairs whose successors disagree; the non-strict build
# records them and still yields the geodesic language
G = DyerGroup(fixture("FIG1"))
try:
    cones.build_geodesic_automaton(G)
except cones.ConsistencyError as e:
    print("FIG1 strict build:", e)
a = cones.build_geodesic_automaton(G, strict=False)
m = cones.minimize(a)
print(f"FIG1 non-strict: {len(a)} profiles, {len(a.meta['conflicts'])} conflicts, {len(m)} minimized states")
print("geodesic growth", cones.geodesic_growth(m, 9))
print("spherical growth", cones.spherical_growth(G, 9))
