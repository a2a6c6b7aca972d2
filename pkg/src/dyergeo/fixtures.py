"""Small Dyer graphs used throughout the tests, demos and CLI docs."""

from .graph import DyerGraph, parse_dyer_graph

SOURCES = {
    # cyclic group of order 5; Cay(D, X_S) is the complete graph K5
    "C5cyc": "vertex x 5\n",
    # the integer line
    "Zline": "vertex x inf\n",
    # symmetric group S3 as the Coxeter group I2(3)
    "S3": "vertex u 2\nvertex v 2\nedge u v 3\n",
    # dihedral group of order 8
    "D4": "vertex u 2\nvertex v 2\nedge u v 4\n",
    "Z2": "vertex a inf\nvertex b inf\nedge a b 2\n",
    # Z/3 x Z/4
    "GP34": "vertex a 3\nvertex b 4\nedge a b 2\n",
    # neither Coxeter nor a graph product of cyclic groups
    "FIG1": "vertex a inf\nvertex b 2\nvertex c 2\nedge a b 2\nedge b c 3\n",
}


def fixture(name: str) -> DyerGraph:
    return parse_dyer_graph(SOURCES[name])


def all_fixtures() -> dict[str, DyerGraph]:
    return {name: fixture(name) for name in SOURCES}
