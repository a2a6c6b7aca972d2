"""Dyer graphs: the labelled simplicial graphs that define Dyer groups.

A Dyer graph carries an order ``f(v)`` in ``{2, 3, ...} ∪ {inf}`` on every
vertex and a label ``m(e) >= 2`` on every edge, subject to the compatibility
rule that an edge with ``m(e) != 2`` joins two vertices of order 2.

The line format understood by :func:`parse_dyer_graph`::

    # comment
    vertex a inf
    vertex b 2
    edge a b 2
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple

INF = math.inf


class DyerGraphError(ValueError):
    """Invalid Dyer graph data, optionally located at a line/column."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class CompatibilityError(DyerGraphError):
    """An edge with label m != 2 touches a vertex whose order is not 2."""

    def __init__(self, u, v, m, line=None, column=None):
        self.edge = (u, v)
        super().__init__(
            f"edge {{{u},{v}}} has m={m} but both endpoints must have order 2",
            line,
            column,
        )


class Letter(NamedTuple):
    """A generator ``x_v^exp`` of X_S, stored by vertex position."""

    vertex: int
    exp: int


class GroupClass(enum.Enum):
    COXETER = "coxeter"
    RAAG = "raag"
    GRAPH_PRODUCT = "graph-product-of-cyclics"
    GENERAL = "general"


@dataclass(frozen=True)
class DyerGraph:
    names: tuple[str, ...]
    orders: tuple[float, ...]
    # (i, j, m) with i < j, sorted
    edges: tuple[tuple[int, int, int], ...] = ()
    _labels: dict = field(init=False, repr=False, compare=False, hash=False)
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise DyerGraphError("duplicate vertex id")
        if len(self.names) != len(self.orders):
            raise DyerGraphError("names and orders differ in length")
        for name, k in zip(self.names, self.orders):
            if not (k == INF or (isinstance(k, int) and k >= 2)):
                raise DyerGraphError(f"vertex {name} has invalid order {k!r}")
        labels = {}
        norm = []
        for i, j, m in self.edges:
            if i == j:
                raise DyerGraphError(f"loop at vertex {self.names[i]}")
            if not (0 <= i < len(self.names) and 0 <= j < len(self.names)):
                raise DyerGraphError("edge endpoint is not a declared vertex")
            if m < 2:
                raise DyerGraphError(f"edge label {m} < 2")
            key = frozenset((i, j))
            if key in labels:
                raise DyerGraphError(
                    f"multiple edges {{{self.names[i]},{self.names[j]}}}"
                )
            if m != 2 and not (self.orders[i] == 2 and self.orders[j] == 2):
                raise CompatibilityError(self.names[i], self.names[j], m)
            labels[key] = m
            norm.append((min(i, j), max(i, j), m))
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        object.__setattr__(self, "_labels", labels)
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(self.names)})

    @classmethod
    def from_spec(cls, vertices, edges=()):
        """Build from ``[(name, order), ...]`` and ``[(name, name, m), ...]``."""
        names = tuple(n for n, _ in vertices)
        orders = tuple(INF if k in (None, "inf", INF) else k for _, k in vertices)
        index = {n: i for i, n in enumerate(names)}
        try:
            es = tuple((index[u], index[v], m) for u, v, m in edges)
        except KeyError as exc:
            raise DyerGraphError(f"unknown vertex {exc.args[0]} in edge") from None
        return cls(names, orders, es)

    def __len__(self):
        return len(self.names)

    def index(self, name: str) -> int:
        return self._index[name]

    def label(self, i: int, j: int) -> int | None:
        """Edge label m({i, j}), or None when i and j are not adjacent."""
        return self._labels.get(frozenset((i, j)))

    def neighbours(self, i: int) -> list[int]:
        return [j for j in range(len(self)) if self.label(i, j) is not None]

    def serialize(self) -> str:
        lines = []
        for name, k in zip(self.names, self.orders):
            lines.append(f"vertex {name} {'inf' if k == INF else k}")
        for i, j, m in self.edges:
            lines.append(f"edge {self.names[i]} {self.names[j]} {m}")
        return "\n".join(lines) + "\n"


def _parse_order(tok, line, col):
    if tok == "inf":
        return INF
    try:
        k = int(tok)
    except ValueError:
        raise DyerGraphError(f"expected an integer or 'inf', got {tok!r}", line, col)
    if k < 2:
        raise DyerGraphError(f"vertex order {k} < 2", line, col)
    return k


def parse_dyer_graph(text: str) -> DyerGraph:
    """Parse the line-oriented Dyer graph format and validate the result."""
    names: list[str] = []
    orders: list[float] = []
    index: dict[str, int] = {}
    edges: list[tuple[int, int, int]] = []
    seen_edges: set[frozenset] = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        toks = []
        pos = 0
        for tok in body.split():
            pos = body.index(tok, pos)
            toks.append((tok, pos + 1))
            pos += len(tok)
        kw, kwcol = toks[0]
        if kw == "vertex":
            if len(toks) != 3:
                raise DyerGraphError("expected 'vertex <id> <order>'", lineno, kwcol)
            (name, ncol), (otok, ocol) = toks[1], toks[2]
            if name in index:
                raise DyerGraphError(f"duplicate vertex {name}", lineno, ncol)
            index[name] = len(names)
            names.append(name)
            orders.append(_parse_order(otok, lineno, ocol))
        elif kw == "edge":
            if len(toks) != 4:
                raise DyerGraphError("expected 'edge <id> <id> <m>'", lineno, kwcol)
            ends = []
            for name, col in toks[1:3]:
                if name not in index:
                    raise DyerGraphError(f"unknown vertex {name} in edge", lineno, col)
                ends.append(index[name])
            u, v = ends
            mtok, mcol = toks[3]
            try:
                m = int(mtok)
            except ValueError:
                raise DyerGraphError(f"expected an integer label, got {mtok!r}", lineno, mcol)
            if m < 2:
                raise DyerGraphError(f"edge label {m} < 2", lineno, mcol)
            if u == v:
                raise DyerGraphError(f"loop at vertex {names[u]}", lineno, toks[1][1])
            key = frozenset((u, v))
            if key in seen_edges:
                raise DyerGraphError(
                    f"multiple edges {{{names[u]},{names[v]}}}", lineno, kwcol
                )
            if m != 2 and not (orders[u] == 2 and orders[v] == 2):
                raise CompatibilityError(names[u], names[v], m, lineno, kwcol)
            seen_edges.add(key)
            edges.append((u, v, m))
        else:
            raise DyerGraphError(f"unknown keyword {kw!r}", lineno, kwcol)

    if not names:
        raise DyerGraphError("no vertices declared", 1, 1)
    return DyerGraph(tuple(names), tuple(orders), tuple(edges))


def enumerate_letters(g: DyerGraph) -> list[Letter]:
    """The letters of X_S in shortlex order.

    Vertices come in declaration order; a finite-order vertex contributes
    exponents 1..k-1, an infinite-order vertex contributes +1 then -1.
    """
    out = []
    for i, k in enumerate(g.orders):
        if k == INF:
            out += [Letter(i, 1), Letter(i, -1)]
        else:
            out += [Letter(i, a) for a in range(1, k)]
    return out


def max_edge_label(g: DyerGraph) -> int:
    """M = max m(e); 2 for an edgeless graph so that 2M is always defined."""
    return max((m for _, _, m in g.edges), default=2)


def classify(g: DyerGraph) -> GroupClass:
    if all(k == 2 for k in g.orders):
        return GroupClass.COXETER
    if all(k == INF for k in g.orders):
        return GroupClass.RAAG
    if all(m == 2 for _, _, m in g.edges):
        return GroupClass.GRAPH_PRODUCT
    return GroupClass.GENERAL
