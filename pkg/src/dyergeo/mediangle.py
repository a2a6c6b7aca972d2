"""Mediangle axioms, hyperplanes and the hyperplane geodesic criterion.

The four axiom checkers work on any *local graph*: an object exposing
``len()``, ``neighbours(i)``, ``adjacent(i, j)``, ``dist(i, j)``,
``depth(i)``, ``effective_radius``, ``edge_list()`` and ``dihedral_cycles()``.
:class:`~dyergeo.cayley.CayleyBall` is the main one; :class:`FiniteGraph`
wraps a small explicit graph (used for negative controls).

An axiom instance is only evaluated when every vertex a witness could use is
guaranteed to lie in the ball: adjacency margin 1 for the triangle
condition, margin M for the cycle condition. Skipped instances are counted.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Sequence

from scipy.cluster.hierarchy import DisjointSet

from .cayley import CayleyBall, DihedralCycle, build_ball
from .graph import max_edge_label
from .words import DyerGroup

AXIOMS = ("triangle", "k4minus", "cycle", "even-intersections")


@dataclass
class AxiomReport:
    axiom: str
    instances_checked: int = 0
    instances_skipped_for_margin: int = 0
    violations: list[tuple] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_text(self, label=str, limit: int = 10) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [
            f"{self.axiom}: {status} checked={self.instances_checked} "
            f"skipped_for_margin={self.instances_skipped_for_margin} "
            f"violations={len(self.violations)}"
        ]
        for wit in self.violations[:limit]:
            lines.append("  witness: " + " | ".join(label(i) for i in wit))
        return "\n".join(lines)


class FiniteGraph:
    """An explicit finite graph treated as a ball of infinite radius."""

    radius = math.inf
    effective_radius = math.inf

    def __init__(self, n: int, edges, cycles=()):
        self.n = n
        self._adj = [set() for _ in range(n)]
        for i, j in edges:
            self._adj[i].add(j)
            self._adj[j].add(i)
        self._dist = [self._bfs(i) for i in range(n)]
        self._cycles = [DihedralCycle("cycle", (0, 0), c[0], tuple(c)) for c in cycles]

    def _bfs(self, s):
        d = [math.inf] * self.n
        d[s] = 0
        q = deque([s])
        while q:
            x = q.popleft()
            for y in self._adj[x]:
                if d[y] == math.inf:
                    d[y] = d[x] + 1
                    q.append(y)
        return d

    def __len__(self):
        return self.n

    def neighbours(self, i):
        return set(self._adj[i])

    def adjacent(self, i, j):
        return j in self._adj[i]

    def dist(self, i, j):
        return self._dist[i][j]

    def depth(self, i):
        return 0

    def edge_list(self):
        return sorted((i, j) for i in range(self.n) for j in self._adj[i] if i < j)

    def dihedral_cycles(self):
        return self._cycles


def _margin(ball) -> int:
    if isinstance(ball, CayleyBall):
        return max_edge_label(ball.graph)
    return 0


def _in_interval(ball, o, x, z) -> bool:
    return ball.dist(o, z) + ball.dist(z, x) == ball.dist(o, x)


def check_triangle_condition(ball) -> AxiomReport:
    rep = AxiomReport("triangle")
    n = len(ball)
    nbrs = [ball.neighbours(i) for i in range(n)]
    edges = ball.edge_list()
    for o in range(n):
        for x, y in edges:
            dx = ball.dist(o, x)
            if dx != ball.dist(o, y):
                continue
            if min(ball.depth(x), ball.depth(y)) + 1 > ball.effective_radius:
                rep.instances_skipped_for_margin += 1
                continue
            rep.instances_checked += 1
            if not any(ball.dist(o, z) == dx - 1 for z in nbrs[x] & nbrs[y]):
                rep.violations.append((o, x, y))
    return rep


def check_k4_minus_free(ball) -> AxiomReport:
    rep = AxiomReport("k4minus")
    nbrs = [ball.neighbours(i) for i in range(len(ball))]
    for g, h in ball.edge_list():
        common = sorted(nbrs[g] & nbrs[h])
        for p, q in itertools.combinations(common, 2):
            rep.instances_checked += 1
            if q not in nbrs[p]:
                rep.violations.append((g, h, p, q))
    return rep


def _cycles_by_edge(cycles):
    index = defaultdict(list)
    for c in cycles:
        for e in c.edges():
            index[e].append(c)
    return index


def check_cycle_condition(ball) -> AxiomReport:
    rep = AxiomReport("cycle")
    M = _margin(ball)
    n = len(ball)
    nbrs = [sorted(ball.neighbours(i)) for i in range(n)]
    by_edge = _cycles_by_edge(ball.dihedral_cycles())
    for o in range(n):
        for z in range(n):
            dz = ball.dist(o, z)
            if dz < 2:
                continue
            lower = [x for x in nbrs[z] if ball.dist(o, x) == dz - 1]
            for x, y in itertools.combinations(lower, 2):
                if ball.depth(z) + M > ball.effective_radius:
                    rep.instances_skipped_for_margin += 1
                    continue
                rep.instances_checked += 1
                if not _cycle_witness(ball, by_edge, o, x, y, z):
                    rep.violations.append((o, x, y, z))
    return rep


def _cycle_witness(ball, by_edge, o, x, y, z) -> DihedralCycle | None:
    exz = frozenset((x, z))
    eyz = frozenset((y, z))
    for c in by_edge.get(exz, ()):
        if eyz not in c.edges():
            continue
        q = c.vertex_cycle[c.opposite(c.vertex_cycle.index(z))]
        if _in_interval(ball, o, x, q) and _in_interval(ball, o, y, q):
            return c
    return None


def check_even_cycle_intersections(ball) -> AxiomReport:
    rep = AxiomReport("even-intersections")
    cycles = ball.dihedral_cycles()
    shared = defaultdict(int)
    for e, cs in _cycles_by_edge(cycles).items():
        ids = sorted(id(c) for c in cs)
        for a, b in itertools.combinations(ids, 2):
            shared[a, b] += 1
    pos = {id(c): k for k, c in enumerate(cycles)}
    rep.instances_checked = len(cycles) * (len(cycles) - 1) // 2
    for (a, b), count in sorted(shared.items(), key=lambda kv: (pos[kv[0][0]], pos[kv[0][1]])):
        if count > 1:
            rep.violations.append((cycles[pos[a]].base, cycles[pos[b]].base))
    return rep


def check_all(ball) -> dict[str, AxiomReport]:
    return {
        "triangle": check_triangle_condition(ball),
        "k4minus": check_k4_minus_free(ball),
        "cycle": check_cycle_condition(ball),
        "even-intersections": check_even_cycle_intersections(ball),
    }


# -- hyperplanes ------------------------------------------------------------


class HyperplanePartition:
    """Ball edges grouped by the closure of the triangle/opposite-edge relation."""

    def __init__(self, edges: list[tuple[int, int]]):
        self.edges = edges
        self.edge_id = {frozenset(e): k for k, e in enumerate(edges)}
        self._ds = DisjointSet(range(len(edges)))

    def merge(self, e1, e2):
        self._ds.merge(self.edge_id[frozenset(e1)], self.edge_id[frozenset(e2)])

    def class_of(self, i: int, j: int) -> int:
        """Class id: the smallest edge id in the class."""
        root = self._ds[self.edge_id[frozenset((i, j))]]
        return min(self._ds.subset(root))

    def classes(self) -> list[set[int]]:
        return sorted((set(s) for s in self._ds.subsets()), key=min)

    def __len__(self):
        return self._ds.n_subsets

    def to_csv(self, label=str) -> str:
        lines = ["u,v,class"]
        for k, (i, j) in enumerate(self.edges):
            lines.append(f"{label(i)},{label(j)},{self.class_of(i, j)}")
        return "\n".join(lines) + "\n"


def compute_hyperplanes(ball) -> HyperplanePartition:
    hp = HyperplanePartition(ball.edge_list())
    nbrs = [ball.neighbours(i) for i in range(len(ball))]
    for i, j in hp.edges:
        for k in nbrs[i] & nbrs[j]:
            if k > j:
                hp.merge((i, j), (i, k))
                hp.merge((i, j), (j, k))
    for c in ball.dihedral_cycles():
        es = c.edges()
        half = len(es) // 2
        for t in range(half):
            hp.merge(es[t], es[t + half])
    return hp


def crossings(path: Sequence[int], hp: HyperplanePartition) -> list[int]:
    return [hp.class_of(path[t], path[t + 1]) for t in range(len(path) - 1)]


def is_geodesic(ball, path: Sequence[int]) -> bool:
    return len(path) - 1 == ball.dist(path[0], path[-1])


@dataclass
class GeodesicVerdict:
    geodesic: bool
    repeated_class: bool
    margin_ok: bool


def geodesic_verdict(ball, hp: HyperplanePartition, path: Sequence[int]) -> GeodesicVerdict:
    """Distance-based geodesity alongside the hyperplane crossing test.

    ``margin_ok`` is False when some path vertex lies deeper than R - M, in
    which case the crossing test is not trusted for completeness.
    """
    cs = crossings(path, hp)
    margin_ok = all(ball.depth(v) <= ball.effective_radius - _margin(ball) for v in path)
    return GeodesicVerdict(is_geodesic(ball, path), len(set(cs)) < len(cs), margin_ok)


@dataclass
class CriterionReport:
    radius: int
    paths_checked: int = 0
    soundness_failures: list = field(default_factory=list)
    completeness_failures: list = field(default_factory=list)
    retried_at: int | None = None

    @property
    def passed(self) -> bool:
        return not self.soundness_failures and not self.completeness_failures


def verify_hyperplane_criterion(group: DyerGroup, radius: int = 8, max_len: int = 5,
                                retry: bool = True) -> CriterionReport:
    """Check "repeated hyperplane" <=> "non-geodesic" over all short paths.

    Paths are read from the identity; only those whose vertices stay within
    ``radius - M`` are used. Completeness failures trigger one retry on a
    ball of radius ``radius + M``.
    """
    M = max_edge_label(group.graph)
    words = [w for w in _words_within(group, max_len, radius - M)]
    rep = _criterion_pass(group, radius, words)
    if retry and rep.completeness_failures and not rep.soundness_failures:
        again = _criterion_pass(group, radius + M, words)
        again.retried_at = radius + M
        return again
    return rep


def _words_within(group, max_len, depth):
    stack = [((), ())]
    while stack:
        w, nf = stack.pop()
        yield w
        if len(w) == max_len:
            continue
        for a in range(len(group.alphabet)):
            n = group.normal_form(nf + (a,))
            if len(n) <= depth:
                stack.append((w + (a,), n))


def _criterion_pass(group, radius, words) -> CriterionReport:
    ball = build_ball(group, radius)
    hp = compute_hyperplanes(ball)
    rep = CriterionReport(radius)
    for w in sorted(words, key=lambda w: (len(w), w)):
        if not w:
            continue
        path = ball.path_from_word(w)
        rep.paths_checked += 1
        cs = crossings(path, hp)
        repeated = len(set(cs)) < len(cs)
        geo = is_geodesic(ball, path)
        if repeated and geo:
            rep.soundness_failures.append(w)
        elif not repeated and not geo:
            rep.completeness_failures.append(w)
    return rep
