"""Cone types, the geodesic automaton and growth series.

The automaton's states are *cone profiles*: for an element g, the vector
``h -> ℓ(g h) - ℓ(g)`` over the ball B(2M). Transitions read a letter s
exactly when ℓ(g s) = ℓ(g) + 1. That the profile of g determines both the
transitions and their targets is checked while the automaton is built.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from sympy import Poly, Symbol, gcd
from sympy.polys.matrices import DomainMatrix
from sympy.polys.domains import ZZ

from .cayley import build_ball
from .fftp import fftp_constant
from .words import DyerGroup, NormalForm


class ConsistencyError(RuntimeError):
    """Two elements with equal profiles disagree on a transition."""


class StateLimitError(RuntimeError):
    pass


def profile_ball(group: DyerGroup, k: int | None = None) -> list[NormalForm]:
    """Fixed enumeration of B(k) (BFS order) indexing profile entries."""
    if k is None:
        k = fftp_constant(group)
    return build_ball(group, k).elements


def cone_profile(group: DyerGroup, g: Sequence[int], k: int | None = None,
                 ball: Sequence[NormalForm] | None = None) -> tuple[int, ...]:
    if ball is None:
        ball = profile_ball(group, k)
    g = group.normal_form(g)
    lg = len(g)
    # ball is in BFS order and prefixes of normal forms are normal forms, so
    # g*h is one letter away from g*h[:-1]; these products are shared
    # between nearby g and hit the normal-form cache
    prod = {(): g}
    out = []
    for h in ball:
        if h:
            prod[h] = x = group.normal_form(prod[h[:-1]] + h[-1:])
        else:
            x = g
        out.append(len(x) - lg)
    return tuple(out)


def truncated_cone_type(group: DyerGroup, g: Sequence[int], depth: int,
                        ball: Sequence[NormalForm] | None = None) -> frozenset:
    """T(g) ∩ B(depth)."""
    if ball is None:
        ball = build_ball(group, depth).elements
    g = group.normal_form(g)
    lg = len(g)
    return frozenset(h for h in ball if len(group.normal_form(g + h)) == lg + len(h))


@dataclass
class GeodesicAutomaton:
    n_letters: int
    states: list  # cone profiles, or frozensets of merged states after minimising
    start: int
    transitions: list[dict[int, int]]
    representatives: list | None = None
    complete: bool = True
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.states)

    def run(self, word: Sequence[int]) -> int | None:
        s = self.start
        for a in word:
            s = self.transitions[s].get(a)
            if s is None:
                return None
        return s

    def accepts(self, word: Sequence[int]) -> bool:
        return self.run(word) is not None

    def words(self, max_len: int):
        """Accepted words up to ``max_len``, in shortlex order."""
        layer = [((), self.start)]
        for n in range(max_len + 1):
            yield from (w for w, _ in layer)
            layer = [
                (w + (a,), t)
                for w, s in layer
                for a, t in sorted(self.transitions[s].items())
            ]

    def transfer_matrix(self) -> list[list[int]]:
        n = len(self.states)
        A = [[0] * n for _ in range(n)]
        for s, row in enumerate(self.transitions):
            for t in row.values():
                A[s][t] += 1
        return A

    def to_dot(self, group: DyerGroup | None = None) -> str:
        lines = ["digraph geodesics {", "  rankdir=LR;", f"  start -> {self.start};"]
        lines.append('  start [shape=point];')
        for s in range(len(self.states)):
            lines.append(f"  {s} [shape=doublecircle];")
        for s, row in enumerate(self.transitions):
            for a, t in sorted(row.items()):
                lab = group.format_word((a,)) if group else str(a)
                lines.append(f'  {s} -> {t} [label="{lab}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_table(self, group: DyerGroup | None = None) -> str:
        labels = [group.format_word((a,)) if group else str(a) for a in range(self.n_letters)]
        lines = ["state\t" + "\t".join(labels)]
        for s, row in enumerate(self.transitions):
            mark = "*" if s == self.start else ""
            cells = [str(row[a]) if a in row else "-" for a in range(self.n_letters)]
            lines.append(f"{s}{mark}\t" + "\t".join(cells))
        return "\n".join(lines) + "\n"


def build_geodesic_automaton(group: DyerGroup, k: int | None = None,
                             max_radius: int | None = None,
                             max_states: int = 100_000,
                             verify: bool = True,
                             strict: bool = True) -> GeodesicAutomaton:
    """Breadth-first exploration of cone profiles from the identity.

    Representatives deeper than ``max_radius`` are not expanded (the result
    then has ``complete=False`` if any such state was met). With ``verify``
    every non-representative element reached by a transition is expanded as
    well, and its transition targets are compared with its state's. A
    mismatch raises :class:`ConsistencyError` when ``strict``; otherwise it
    is recorded in ``meta["conflicts"]`` and the representative's
    transition is kept.
    """
    if k is None:
        k = fftp_constant(group)
    ball = profile_ball(group, k)
    pos = {h: i for i, h in enumerate(ball)}
    nl = len(group.alphabet)
    letter_pos = [pos[(a,)] for a in range(nl)]

    def prof(g):
        return cone_profile(group, g, ball=ball)

    states: list[tuple] = []
    ids: dict[tuple, int] = {}
    reps: list[NormalForm] = []
    transitions: list[dict[int, int]] = []
    others: list[tuple[NormalForm, int]] = []
    complete = True

    def state_of(g, p):
        sid = ids.get(p)
        if sid is None:
            sid = ids[p] = len(states)
            if sid >= max_states:
                raise StateLimitError(f"more than {max_states} cone profiles")
            states.append(p)
            reps.append(g)
            transitions.append({})
            queue.append(sid)
        elif reps[sid] != g:
            others.append((g, sid))
        return sid

    queue: deque[int] = deque()
    state_of((), prof(()))
    while queue:
        sid = queue.popleft()
        g = reps[sid]
        if max_radius is not None and len(g) > max_radius:
            complete = False
            continue
        p = states[sid]
        for a in range(nl):
            if p[letter_pos[a]] == 1:
                h = group.normal_form(g + (a,))
                transitions[sid][a] = state_of(h, prof(h))

    conflicts = []
    if verify and complete:
        for h, sid in others:
            p = states[sid]
            for a in range(nl):
                if p[letter_pos[a]] != 1:
                    continue
                target = prof(group.normal_form(h + (a,)))
                if ids.get(target) == transitions[sid].get(a):
                    continue
                if strict:
                    raise ConsistencyError(
                        f"elements {group.format_word(reps[sid]) or 'e'} and "
                        f"{group.format_word(h) or 'e'} share a cone profile but "
                        f"disagree after letter {group.format_word((a,))}"
                    )
                conflicts.append((reps[sid], h, a))

    return GeodesicAutomaton(
        nl, states, 0, transitions, reps, complete,
        {
            "k": k,
            "ball_size": len(ball),
            "verified_elements": len(others) if verify and complete else 0,
            "conflicts": conflicts,
        },
    )


def minimize(a: GeodesicAutomaton) -> GeodesicAutomaton:
    """Moore partition refinement on the completed automaton (with a sink)."""
    n = len(a.states)
    sink = n
    delta = [[row.get(x, sink) for x in range(a.n_letters)] for row in a.transitions]
    delta.append([sink] * a.n_letters)
    block = [0] * n + [1]
    while True:
        sigs = {}
        new = []
        for s in range(n + 1):
            key = (block[s],) + tuple(block[t] for t in delta[s])
            new.append(sigs.setdefault(key, len(sigs)))
        if len(sigs) == len(set(block)):
            break
        block = new
    # renumber reachable blocks in BFS order from the start, dropping the sink
    order = {}
    queue = deque([block[a.start]])
    order[block[a.start]] = 0
    while queue:
        b = queue.popleft()
        s = block.index(b)
        for x in range(a.n_letters):
            t = block[delta[s][x]]
            if t != block[sink] and t not in order:
                order[t] = len(order)
                queue.append(t)
    members = [set() for _ in order]
    for s in range(n):
        if block[s] in order:
            members[order[block[s]]].add(s)
    transitions = []
    for b in range(len(order)):
        s = min(members[b])
        row = {}
        for x in range(a.n_letters):
            t = block[delta[s][x]]
            if t != block[sink]:
                row[x] = order[t]
        transitions.append(row)
    return GeodesicAutomaton(
        a.n_letters, [frozenset(m) for m in members], 0, transitions, None, a.complete, dict(a.meta)
    )


def geodesic_growth(a: GeodesicAutomaton, terms: int) -> list[int]:
    """Number of accepted words of each length 0..terms-1."""
    counts = {a.start: 1}
    out = []
    for _ in range(terms):
        out.append(sum(counts.values()))
        nxt: dict[int, int] = {}
        for s, c in counts.items():
            for t in a.transitions[s].values():
                nxt[t] = nxt.get(t, 0) + c
        counts = nxt
    return out


def expand_rational(num: Sequence[int], den: Sequence[int], terms: int) -> list[int]:
    """Power-series coefficients of num(t)/den(t), with den(0) = 1."""
    if den[0] != 1:
        raise ValueError("denominator must have constant term 1")
    out = []
    for n in range(terms):
        c = num[n] if n < len(num) else 0
        for i in range(1, min(n, len(den) - 1) + 1):
            c -= den[i] * out[n - i]
        out.append(c)
    return out


def growth_rational(a: GeodesicAutomaton, cancel: bool = False) -> tuple[list[int], list[int]]:
    """Geodesic growth series as (numerator, denominator) coefficient lists.

    Coefficients are in increasing powers of t. The denominator is
    det(I - tA) for the transfer matrix A; with ``cancel`` the common factor
    of numerator and denominator is removed.
    """
    A = a.transfer_matrix()
    n = len(A)
    charpoly = DomainMatrix([[ZZ(x) for x in row] for row in A], (n, n), ZZ).charpoly()
    den = [int(c) for c in charpoly]  # det(tI - A) high-to-low == det(I - tA) low-to-high
    series = geodesic_growth(a, max(n, 1))
    num = [sum(den[i] * series[j - i] for i in range(0, j + 1) if i < len(den)) for j in range(max(n, 1))]
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    while len(den) > 1 and den[-1] == 0:
        den.pop()
    if cancel:
        t = Symbol("t")
        pn = Poly(list(reversed(num)), t, domain="ZZ")
        pd = Poly(list(reversed(den)), t, domain="ZZ")
        g = gcd(pn, pd)
        pn, pd = pn.quo(g), pd.quo(g)
        c0 = pd.eval(0)
        if c0 < 0:
            pn, pd = -pn, -pd
        num = [int(c) for c in reversed(pn.all_coeffs())]
        den = [int(c) for c in reversed(pd.all_coeffs())]
    return num, den


def format_polynomial(coeffs: Sequence[int]) -> str:
    return " ".join(str(c) for c in coeffs)


def spherical_growth(group: DyerGroup, terms: int, max_elements: int | None = None) -> list[int]:
    """Sphere sizes |{g : ℓ(g) = t}| for t = 0..terms-1."""
    kw = {} if max_elements is None else {"max_elements": max_elements}
    return build_ball(group, max(terms - 1, 0), **kw).sphere_sizes[:terms]
