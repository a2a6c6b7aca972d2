"""Finite balls in Cay(D, X_S), metric queries and dihedral cycles.

Distances are always computed from normal-form lengths, ``d(g, h) =
ℓ(g^{-1} h)``, so nothing here suffers from ball-boundary effects; a
:class:`CayleyBall` is an index and adjacency cache.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .graph import DyerGraph, Letter
from .words import DyerGroup, NormalForm

DEFAULT_MAX_ELEMENTS = 10**6


class ResourceLimitError(RuntimeError):
    pass


@dataclass(frozen=True)
class DihedralCycle:
    kind: str  # "commutation-square" or "braid-cycle"
    dyer_edge: tuple[int, int]
    base: int
    vertex_cycle: tuple[int, ...]

    def __len__(self):
        return len(self.vertex_cycle)

    def edges(self) -> list[frozenset]:
        vc = self.vertex_cycle
        return [frozenset((vc[i], vc[(i + 1) % len(vc)])) for i in range(len(vc))]

    def opposite(self, i: int) -> int:
        """Position of the vertex antipodal to position ``i``."""
        return (i + len(self.vertex_cycle) // 2) % len(self.vertex_cycle)


@dataclass
class CayleyBall:
    group: DyerGroup
    radius: int
    elements: list[NormalForm]
    index: dict[NormalForm, int]
    # adjacency[i][letter] = j when elements[i] * letter lies in the ball
    adjacency: list[dict[int, int]]
    sphere_sizes: list[int]
    _dist: dict = field(default_factory=dict, repr=False)
    _cycles: list | None = field(default=None, repr=False)

    def __len__(self):
        return len(self.elements)

    @property
    def closed(self) -> bool:
        """True when the ball is the whole (finite) group."""
        n = len(self.group.alphabet)
        return all(len(row) == n for row in self.adjacency)

    @property
    def effective_radius(self) -> float:
        return math.inf if self.closed else self.radius

    @property
    def graph(self) -> DyerGraph:
        return self.group.graph

    def depth(self, i: int) -> int:
        return len(self.elements[i])

    def neighbours(self, i: int) -> set[int]:
        return set(self.adjacency[i].values())

    def adjacent(self, i: int, j: int) -> bool:
        return j in self.adjacency[i].values()

    def dist(self, i: int, j: int) -> int:
        if i == j:
            return 0
        key = (i, j) if i < j else (j, i)
        d = self._dist.get(key)
        if d is None:
            d = distance(self.group, self.elements[i], self.elements[j])
            self._dist[key] = d
        return d

    def edge_list(self) -> list[tuple[int, int]]:
        return sorted({(min(i, j), max(i, j)) for i, nb in enumerate(self.adjacency) for j in nb.values()})

    def edge_letter(self, i: int, j: int) -> int:
        for a, k in self.adjacency[i].items():
            if k == j:
                return a
        raise KeyError((i, j))

    def dihedral_cycles(self) -> list[DihedralCycle]:
        if self._cycles is None:
            self._cycles = enumerate_dihedral_cycles(self)
        return self._cycles

    def path_from_word(self, w: Sequence[int], start: int = 0) -> list[int]:
        """Vertex indices visited by reading ``w`` from ``start``."""
        path = [start]
        for a in w:
            try:
                path.append(self.adjacency[path[-1]][a])
            except KeyError:
                raise ValueError("path leaves the ball") from None
        return path

    def to_dot(self) -> str:
        g = self.group
        lines = ["graph cayley {"]
        for i, w in enumerate(self.elements):
            lines.append(f'  {i} [label="{g.format_word(w) or "e"}"];')
        for i, j in self.edge_list():
            a = self.edge_letter(i, j)
            lines.append(f'  {i} -- {j} [label="{g.format_word((a,))}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_ball(group: DyerGroup, radius: int, max_elements: int = DEFAULT_MAX_ELEMENTS) -> CayleyBall:
    """BFS from the identity by right multiplication with every letter."""
    if radius < 0:
        raise ValueError("radius must be non-negative")
    nletters = len(group.alphabet)
    elements: list[NormalForm] = [()]
    index = {(): 0}
    sphere_sizes = [1]
    frontier = [()]
    for r in range(1, radius + 1):
        nxt = []
        for w in frontier:
            for a in range(nletters):
                n = group.normal_form(w + (a,))
                if len(n) == r and n not in index:
                    index[n] = len(elements)
                    elements.append(n)
                    nxt.append(n)
                    if len(elements) > max_elements:
                        raise ResourceLimitError(
                            f"ball of radius {radius} exceeds {max_elements} elements (at radius {r})"
                        )
        sphere_sizes.append(len(nxt))
        frontier = nxt
    adjacency: list[dict[int, int]] = []
    for w in elements:
        row = {}
        for a in range(nletters):
            j = index.get(group.normal_form(w + (a,)))
            if j is not None:
                row[a] = j
        adjacency.append(row)
    return CayleyBall(group, radius, elements, index, adjacency, sphere_sizes)


def distance(group: DyerGroup, n1: Sequence[int], n2: Sequence[int]) -> int:
    return group.distance(n1, n2)


def interval(group: DyerGroup, n1: Sequence[int], n2: Sequence[int]) -> set[NormalForm]:
    """I(n1, n2): every element on some geodesic from n1 to n2."""
    n1 = group.normal_form(n1)
    n2 = group.normal_form(n2)
    total = group.distance(n1, n2)
    layer = {n1}
    out = {n1}
    for t in range(1, total + 1):
        nxt = set()
        for z in layer:
            for a in range(len(group.alphabet)):
                y = group.normal_form(z + (a,))
                if y not in nxt and group.distance(y, n2) == total - t:
                    nxt.add(y)
        layer = nxt
        out |= nxt
    return out


def is_convex(ball: CayleyBall, subset: Iterable[int]) -> bool:
    members = set(subset)
    forms = {ball.elements[i] for i in members}
    ms = sorted(members)
    for x, i in enumerate(ms):
        for j in ms[x + 1 :]:
            if not interval(ball.group, ball.elements[i], ball.elements[j]) <= forms:
                return False
    return True


def _canonical_cycle_key(vc: Sequence[int]) -> frozenset:
    n = len(vc)
    return frozenset(frozenset((vc[i], vc[(i + 1) % n])) for i in range(n))


def enumerate_dihedral_cycles(ball: CayleyBall) -> list[DihedralCycle]:
    """Every dihedral cycle whose vertices all lie in ``ball``.

    Built directly from the relations, once per base element and Dyer edge,
    and deduplicated as edge sets.
    """
    group = ball.group
    graph = group.graph
    by_vertex = {v: [a for a, l in enumerate(group.alphabet) if l.vertex == v] for v in range(len(graph))}
    seen = set()
    out = []
    for base in range(len(ball)):
        for i, j, m in graph.edges:
            if m == 2:
                for a in by_vertex[i]:
                    for b in by_vertex[j]:
                        vc = _walk(ball, base, (a, b, group.inverse[a], group.inverse[b]))
                        if vc is None:
                            continue
                        key = _canonical_cycle_key(vc)
                        if key not in seen:
                            seen.add(key)
                            out.append(DihedralCycle("commutation-square", (i, j), vc[0], tuple(vc)))
            else:
                a = group.letter_index[Letter(i, 1)]
                b = group.letter_index[Letter(j, 1)]
                vc = _walk(ball, base, tuple(a if t % 2 == 0 else b for t in range(2 * m)))
                if vc is None:
                    continue
                key = _canonical_cycle_key(vc)
                if key not in seen:
                    seen.add(key)
                    out.append(DihedralCycle("braid-cycle", (i, j), vc[0], tuple(vc)))
    return out


def _walk(ball, start, letters):
    """Vertices visited reading ``letters`` from ``start``; None if it leaves the ball."""
    vc = [start]
    for a in letters[:-1]:
        nxt = ball.adjacency[vc[-1]].get(a)
        if nxt is None:
            return None
        vc.append(nxt)
    if ball.adjacency[vc[-1]].get(letters[-1]) != start:
        return None
    return vc
