"""Word problem for Dyer groups over the finite generating set X_S.

Words are tuples of letter indices into :attr:`DyerGroup.alphabet`; the
index order is the shortlex letter order. A *normal form* is the
shortlex-least geodesic word representing an element and doubles as the
element's identity everywhere in the package.

Geodesics are recognised with a Tits-style closure: a locally reduced word
is geodesic iff no word reachable from it by commutations and braid flips
admits a local reduction.
"""

from __future__ import annotations

import re
from collections import deque
from typing import Iterable, Sequence

from .graph import INF, DyerGraph, Letter, enumerate_letters

Word = tuple  # tuple[int, ...] of letter indices
NormalForm = tuple

_DELETE = -1


class DyerGroup:
    """A Dyer group together with its X_S alphabet and memoised rewriting."""

    def __init__(self, graph: DyerGraph):
        self.graph = graph
        self.alphabet: list[Letter] = enumerate_letters(graph)
        self.letter_index = {l: i for i, l in enumerate(self.alphabet)}
        n = len(self.alphabet)
        self.vert = [l.vertex for l in self.alphabet]
        self.inverse = [self.letter_index[self.letter_inverse(l)] for l in self.alphabet]

        # merge[a][b]: None (no merge allowed), _DELETE, or the merged letter
        self.merge = [[None] * n for _ in range(n)]
        for a, la in enumerate(self.alphabet):
            for b, lb in enumerate(self.alphabet):
                if la.vertex != lb.vertex:
                    continue
                k = graph.orders[la.vertex]
                if k == INF:
                    if la.exp == -lb.exp:
                        self.merge[a][b] = _DELETE
                else:
                    s = (la.exp + lb.exp) % k
                    self.merge[a][b] = (
                        _DELETE if s == 0 else self.letter_index[Letter(la.vertex, s)]
                    )

        nv = len(graph)
        self.commutes = [[graph.label(i, j) == 2 for j in range(nv)] for i in range(nv)]
        # braid[u][v] = m for edges with m >= 3 (both orders are 2)
        self.braid = [[0] * nv for _ in range(nv)]
        self._gen = {}
        for i, j, m in graph.edges:
            if m >= 3:
                self.braid[i][j] = self.braid[j][i] = m
                self._gen[i] = self.letter_index[Letter(i, 1)]
                self._gen[j] = self.letter_index[Letter(j, 1)]

        # letter-pair tables for the closure search
        self._swap = [[vi != vj and self.commutes[vi][vj] for vj in self.vert] for vi in self.vert]
        self._flip: dict[tuple[int, int], tuple[Word, Word]] = {}
        for i, j, m in graph.edges:
            if m >= 3:
                a, b = self._gen[i], self._gen[j]
                for p, q in ((a, b), (b, a)):
                    seg = tuple(p if t % 2 == 0 else q for t in range(m))
                    self._flip[p, q] = (seg, tuple(q if t % 2 == 0 else p for t in range(m)))

        self._nf_cache: dict[Word, NormalForm] = {}
        self.identity: NormalForm = ()

    # -- letters -----------------------------------------------------------

    def letter_inverse(self, l: Letter) -> Letter:
        k = self.graph.orders[l.vertex]
        if k == INF:
            return Letter(l.vertex, -l.exp)
        return Letter(l.vertex, k - l.exp)

    def to_letters(self, w: Iterable[int]) -> list[Letter]:
        return [self.alphabet[a] for a in w]

    def from_letters(self, letters: Iterable[Letter]) -> Word:
        return tuple(self.letter_index[Letter(*l)] for l in letters)

    # -- rewriting ---------------------------------------------------------

    def local_reduce(self, w: Sequence[int]) -> Word:
        """Merge adjacent same-vertex letters until no permitted merge remains."""
        merge = self.merge
        stack: list[int] = []
        for b in w:
            while True:
                if not stack:
                    stack.append(b)
                    break
                r = merge[stack[-1]][b]
                if r is None:
                    stack.append(b)
                    break
                stack.pop()
                if r == _DELETE:
                    break
                b = r
        return tuple(stack)

    def is_locally_reduced(self, w: Sequence[int]) -> bool:
        merge = self.merge
        return all(merge[w[i]][w[i + 1]] is None for i in range(len(w) - 1))

    def length_preserving_moves(self, w: Sequence[int]) -> set[Word]:
        """All words one commutation or one braid flip away from ``w``."""
        w = tuple(w)
        out = set()
        vert, commutes, braid = self.vert, self.commutes, self.braid
        n = len(w)
        for i in range(n - 1):
            u, v = vert[w[i]], vert[w[i + 1]]
            if u == v:
                continue
            if commutes[u][v]:
                out.add(w[:i] + (w[i + 1], w[i]) + w[i + 2 :])
                continue
            m = braid[u][v]
            if m and i + m <= n:
                a, b = self._gen[u], self._gen[v]
                seg = w[i : i + m]
                if all(seg[j] == (a if j % 2 == 0 else b) for j in range(m)):
                    flipped = tuple(b if j % 2 == 0 else a for j in range(m))
                    out.add(w[:i] + flipped + w[i + m :])
        out.discard(w)
        return out

    def _closure(self, w: Word) -> tuple[list[Word], Word | None]:
        """BFS closure of a locally reduced word under length-preserving moves.

        Returns the closure and the first locally reducible word met (in
        which case the closure is partial). Since every word in the closure
        is locally reduced, only the pairs straddling an edit are checked.
        """
        seen = {w}
        order = [w]
        queue = deque([w])
        merge, swap, flips = self.merge, self._swap, self._flip
        while queue:
            x = queue.popleft()
            n = len(x)
            for i in range(n - 1):
                p, q = x[i], x[i + 1]
                if swap[p][q]:
                    y = x[:i] + (q, p) + x[i + 2 :]
                    end = i + 2
                else:
                    f = flips.get((p, q))
                    if f is None:
                        continue
                    seg, flipped = f
                    end = i + len(seg)
                    if end > n or x[i:end] != seg:
                        continue
                    y = x[:i] + flipped + x[end:]
                if y in seen:
                    continue
                if (i > 0 and merge[y[i - 1]][y[i]] is not None) or (
                    end < n and merge[y[end - 1]][y[end]] is not None
                ):
                    return order, y
                seen.add(y)
                order.append(y)
                queue.append(y)
        return order, None

    def closure(self, w: Sequence[int]) -> list[Word]:
        """The full length-preserving-move closure of ``w`` (w itself first)."""
        w = tuple(w)
        seen = {w}
        order = [w]
        queue = deque([w])
        while queue:
            for y in self.length_preserving_moves(queue.popleft()):
                if y not in seen:
                    seen.add(y)
                    order.append(y)
                    queue.append(y)
        return order

    def _reduce_with_closure(self, w: Sequence[int]) -> tuple[Word, list[Word]]:
        w = self.local_reduce(w)
        while True:
            cl, bad = self._closure(w)
            if bad is None:
                return w, cl
            w = self.local_reduce(bad)

    def reduce(self, w: Sequence[int]) -> Word:
        """A geodesic word equal to ``w``."""
        return self._reduce_with_closure(w)[0]

    def normal_form(self, w: Sequence[int]) -> NormalForm:
        """Shortlex-least geodesic representative of ``w``."""
        w = tuple(w)
        nf = self._nf_cache.get(w)
        if nf is None:
            _, cl = self._reduce_with_closure(w)
            nf = min(cl)
            self._nf_cache[w] = nf
        return nf

    def is_geodesic(self, w: Sequence[int]) -> bool:
        return len(self.normal_form(w)) == len(w)

    # -- group operations ---------------------------------------------------

    def equal(self, w1: Sequence[int], w2: Sequence[int]) -> bool:
        return self.normal_form(w1) == self.normal_form(w2)

    def multiply(self, n1: Sequence[int], n2: Sequence[int]) -> NormalForm:
        return self.normal_form(tuple(n1) + tuple(n2))

    def invert_word(self, w: Sequence[int]) -> Word:
        inv = self.inverse
        return tuple(inv[a] for a in reversed(w))

    def invert(self, n: Sequence[int]) -> NormalForm:
        return self.normal_form(self.invert_word(n))

    def length(self, w: Sequence[int]) -> int:
        """Word length ℓ of the element represented by ``w``."""
        return len(self.normal_form(w))

    def distance(self, n1: Sequence[int], n2: Sequence[int]) -> int:
        return len(self.normal_form(self.invert_word(n1) + tuple(n2)))

    # -- literals ----------------------------------------------------------

    def parse_word(self, text: str) -> Word:
        return parse_word(self.graph, text, self.letter_index)

    def format_word(self, w: Sequence[int]) -> str:
        return format_word(self.graph, self.to_letters(w))

    def relators(self) -> list[Word]:
        """Instances of the defining relations, as words equal to the identity.

        Includes ``x_v^{f(v)}`` (as f(v) copies of x_v) for finite orders and
        ``[x_u, x_v]_m [x_v, x_u]_m^{-1}`` for every Dyer edge.
        """
        out = []
        for v, k in enumerate(self.graph.orders):
            if k != INF:
                out.append((self.letter_index[Letter(v, 1)],) * k)
        for i, j, m in self.graph.edges:
            for a in self._vertex_letters(i):
                for b in self._vertex_letters(j):
                    lhs = tuple(a if t % 2 == 0 else b for t in range(m))
                    rhs = tuple(b if t % 2 == 0 else a for t in range(m))
                    out.append(lhs + self.invert_word(rhs))
        return out

    def _vertex_letters(self, v: int) -> list[int]:
        return [a for a, l in enumerate(self.alphabet) if l.vertex == v]


_TOKEN = re.compile(r"^([^\s^]+)(?:\^([+-]?\d+))?$")


def parse_word(graph: DyerGraph, text: str, letter_index=None) -> Word:
    """Parse ``"a^1 b a^-1"`` into letter indices.

    Exponents default to 1. Finite-order exponents are reduced mod the
    order; an infinite-order power ``a^n`` expands to ``|n|`` letters.
    """
    if letter_index is None:
        letter_index = {l: i for i, l in enumerate(enumerate_letters(graph))}
    out = []
    for tok in text.split():
        mt = _TOKEN.match(tok)
        if not mt:
            raise ValueError(f"bad word token {tok!r}")
        name, exp = mt.group(1), int(mt.group(2) or 1)
        try:
            v = graph.index(name)
        except KeyError:
            raise ValueError(f"unknown generator {name!r}") from None
        k = graph.orders[v]
        if k == INF:
            if exp == 0:
                raise ValueError(f"zero exponent in {tok!r}")
            sign = 1 if exp > 0 else -1
            out += [letter_index[Letter(v, sign)]] * abs(exp)
        else:
            e = exp % k
            if e == 0:
                raise ValueError(f"exponent in {tok!r} is trivial mod {k}")
            out.append(letter_index[Letter(v, e)])
    return tuple(out)


def format_word(graph: DyerGraph, letters: Iterable[Letter]) -> str:
    return " ".join(f"{graph.names[l.vertex]}^{l.exp}" for l in letters)
