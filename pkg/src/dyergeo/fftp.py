"""Path transformations, synchronous fellow travelling and FFTP certificates.

Paths are lists of group elements (normal forms) ``[v_0, ..., v_n]`` with
consecutive elements one letter apart. A path is read as a function of
time that stays at ``v_n`` once it has ended.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .graph import INF, max_edge_label, parse_dyer_graph
from .words import DyerGroup, NormalForm

Path = list  # list[NormalForm]


class FalsificationEvent(RuntimeError):
    """A non-geodesic path with no shorter 2M-fellow-travelling replacement."""


class TransformError(ValueError):
    """A transformation was requested where its precondition fails."""


def path_from_word(group: DyerGroup, w: Sequence[int], start: NormalForm = ()) -> Path:
    path = [group.normal_form(start)]
    for a in w:
        path.append(group.normal_form(path[-1] + (a,)))
    return path


def step_letters(group: DyerGroup, p: Sequence[NormalForm]) -> list[int]:
    out = []
    for x, y in zip(p, p[1:]):
        s = group.normal_form(group.invert_word(x) + y)
        if len(s) != 1:
            raise ValueError("consecutive path vertices are not adjacent")
        out.append(s[0])
    return out


def _at(p, t):
    return p[t] if t < len(p) else p[-1]


def fellow_travel_distance(group: DyerGroup, p1: Sequence[NormalForm], p2: Sequence[NormalForm]) -> int:
    """max_t d(p1(t), p2(t)) with both paths held at their last vertex."""
    T = max(len(p1), len(p2))
    return max(group.distance(_at(p1, t), _at(p2, t)) for t in range(T))


# -- the three transformations ---------------------------------------------


def remove_backtrack(group: DyerGroup, p: Sequence[NormalForm], i: int) -> Path:
    if not (0 <= i <= len(p) - 3 and p[i] == p[i + 2]):
        raise TransformError(f"no backtrack at position {i}")
    return list(p[: i + 1]) + list(p[i + 3 :])


def shorten_triangle(group: DyerGroup, p: Sequence[NormalForm], i: int) -> Path:
    if not (0 <= i <= len(p) - 3 and group.distance(p[i], p[i + 2]) == 1):
        raise TransformError(f"v_{i} and v_{i + 2} are not adjacent")
    return list(p[: i + 1]) + list(p[i + 2 :])


def dihedral_cycle_at(group: DyerGroup, g: NormalForm, a: int, b: int) -> list[NormalForm] | None:
    """The dihedral cycle based at ``g`` starting with letters ``a`` then ``b``.

    A commutation square for an m = 2 edge, a 2m-cycle alternating the two
    involutions for m >= 3; None when the letters span no Dyer edge.
    """
    u, v = group.vert[a], group.vert[b]
    m = group.graph.label(u, v)
    if m is None:
        return None
    if m == 2:
        letters = (a, b, group.inverse[a])
    else:
        letters = tuple(a if t % 2 == 0 else b for t in range(2 * m - 1))
    cyc = [group.normal_form(g)]
    for c in letters:
        cyc.append(group.normal_form(cyc[-1] + (c,)))
    return cyc


def apply_flip(group: DyerGroup, p: Sequence[NormalForm], cycle: Sequence[NormalForm], i: int) -> Path:
    """Replace the half-cycle of ``cycle`` that ``p`` follows from ``i``.

    The subpath ``p[i : i + len(cycle)//2 + 1]`` must run along ``cycle``
    for exactly half its length; it is swapped for the other half.
    """
    L = len(cycle)
    h = L // 2
    if L % 2 or L < 4:
        raise TransformError("flip needs an even cycle")
    if i < 0 or i + h >= len(p) or p[i] not in cycle:
        raise TransformError(f"path does not follow the cycle from position {i}")
    s = list(cycle).index(p[i])
    for d in (1, -1):
        if all(p[i + t] == cycle[(s + d * t) % L] for t in range(h + 1)):
            other = [cycle[(s - d * t) % L] for t in range(1, h)]
            return list(p[: i + 1]) + other + list(p[i + h :])
    raise TransformError(f"path does not follow the cycle for half its length from {i}")


def find_flips(group: DyerGroup, p: Sequence[NormalForm]) -> list[tuple[int, list[NormalForm]]]:
    """Every (position, cycle) at which a flip applies to ``p``."""
    letters = step_letters(group, p)
    out = []
    for i in range(len(letters) - 1):
        a, b = letters[i], letters[i + 1]
        cyc = dihedral_cycle_at(group, p[i], a, b)
        if cyc is None:
            continue
        h = len(cyc) // 2
        if i + h > len(letters):
            continue
        try:
            apply_flip(group, p, cyc, i)
        except TransformError:
            continue
        out.append((i, cyc))
    return out


@dataclass
class TransformRecord:
    tag: str
    constant: int
    before: Path
    after: Path


def shorten_by_transformations(group: DyerGroup, p: Sequence[NormalForm]) -> tuple[Path, list[TransformRecord]]:
    """Shorten ``p`` to a geodesic using only backtracks, triangles and flips.

    Flip sequences are searched breadth-first until some path admits a
    backtrack or triangle. Every application is recorded with its measured
    fellow-travel distance.
    """
    p = list(p)
    trace: list[TransformRecord] = []

    def record(tag, before, after):
        trace.append(TransformRecord(tag, fellow_travel_distance(group, before, after), before, after))

    while True:
        q = _apply_local(group, p, record)
        if q is not None:
            p = q
            continue
        # search the flip closure for a path with a backtrack or triangle
        start = tuple(p)
        parent = {start: None}
        queue = deque([start])
        found = None
        while queue and found is None:
            x = queue.popleft()
            for i, cyc in find_flips(group, list(x)):
                y = tuple(apply_flip(group, list(x), cyc, i))
                if y in parent:
                    continue
                parent[y] = x
                if _has_local(group, y):
                    found = y
                    break
                queue.append(y)
        if found is None:
            return p, trace
        chain = []
        y = found
        while y is not None:
            chain.append(y)
            y = parent[y]
        chain.reverse()
        for before, after in zip(chain, chain[1:]):
            record("T3", list(before), list(after))
        p = list(found)


def _has_local(group, p):
    return any(p[i] == p[i + 2] or group.distance(p[i], p[i + 2]) == 1 for i in range(len(p) - 2))


def _apply_local(group, p, record):
    for i in range(len(p) - 2):
        if p[i] == p[i + 2]:
            q = remove_backtrack(group, p, i)
            record("T1", p, q)
            return q
    for i in range(len(p) - 2):
        if group.distance(p[i], p[i + 2]) == 1:
            q = shorten_triangle(group, p, i)
            record("T2", p, q)
            return q
    return None


# -- certified shortening ----------------------------------------------------


@dataclass
class ShorteningCertificate:
    original: Path
    replacement: Path
    fellow_constant: int
    transform_trace: list[str] = field(default_factory=lambda: ["tube"])


def fftp_constant(group: DyerGroup) -> int:
    return 2 * max_edge_label(group.graph)


def shorten_within_tube(group: DyerGroup, p: Sequence[NormalForm], k: int | None = None) -> ShorteningCertificate | None:
    """Shortest path with p's endpoints that k-fellow-travels p.

    Among shortest candidates the smallest fellow constant wins, then the
    shortlex-least letter sequence. Returns None for a geodesic input and
    raises :class:`FalsificationEvent` when a non-geodesic input has no
    shorter k-fellow traveller.
    """
    p = list(p)
    if k is None:
        k = fftp_constant(group)
    n = len(p) - 1
    end = p[-1]
    D = group.distance(p[0], end)
    if D == n:
        return None

    cache = {}

    def dist(x, y):
        key = (x, y)
        d = cache.get(key)
        if d is None:
            d = cache[key] = group.distance(x, y)
        return d

    def feasible_len(bound):
        """Smallest replacement length under ``bound``, with its layers."""
        layers = [{p[0]}]
        nl = len(group.alphabet)
        for m in range(0, n):
            if m >= D and end in layers[m] and all(dist(end, p[t]) <= bound for t in range(m, n + 1)):
                return m, layers
            nxt = set()
            for w in layers[-1]:
                for a in range(nl):
                    y = group.normal_form(w + (a,))
                    if y not in nxt and dist(y, p[m + 1]) <= bound:
                        nxt.add(y)
            if not nxt:
                return None
            layers.append(nxt)
        return None

    best = feasible_len(k)
    if best is None:
        raise FalsificationEvent(
            f"no shorter {k}-fellow traveller for path of length {n} "
            f"ending at {group.format_word(end) or 'e'}"
        )
    m = best[0]
    for bound in range(0, k + 1):
        res = feasible_len(bound)
        if res is not None and res[0] == m:
            break
    layers = res[1]

    # backward pruning, then greedy shortlex-least forward walk
    alive = [set() for _ in range(m + 1)]
    alive[m] = {end}
    nl = len(group.alphabet)
    for t in range(m - 1, -1, -1):
        alive[t] = {w for w in layers[t] if any(group.normal_form(w + (a,)) in alive[t + 1] for a in range(nl))}
    path = [p[0]]
    for t in range(m):
        for a in range(nl):
            y = group.normal_form(path[-1] + (a,))
            if y in alive[t + 1]:
                path.append(y)
                break
    constant = fellow_travel_distance(group, p, path)
    assert constant == bound and path[-1] == end
    return ShorteningCertificate(p, path, constant)


# -- minimal non-geodesic paths ---------------------------------------------


def is_minimal_nongeodesic(group: DyerGroup, p: Sequence[NormalForm]) -> bool:
    """Non-geodesic, while dropping either end edge leaves a geodesic."""
    n = len(p) - 1
    if n < 2:
        return False

    def geo(q):
        return group.distance(q[0], q[-1]) == len(q) - 1

    return not geo(p) and geo(p[:-1]) and geo(p[1:])


def edge_kinds(group: DyerGroup, letter: int) -> set[str]:
    """Which kinds of cycle an edge labelled ``letter`` lies on.

    "triangle" when its vertex group has order at least 3, "even-cycle" when
    the vertex has a neighbour in the Dyer graph.
    """
    v = group.vert[letter]
    kinds = set()
    k = group.graph.orders[v]
    if k != INF and k >= 3:
        kinds.add("triangle")
    if group.graph.neighbours(v):
        kinds.add("even-cycle")
    return kinds


# -- exhaustive / sampled verification ---------------------------------------


@dataclass
class FFTPReport:
    graph_text: str
    max_len: int
    bound: int
    mode: str
    seed: int | None = None
    paths_checked: int = 0
    non_geodesic: int = 0
    max_constant: int = 0
    histogram: dict = field(default_factory=dict)  # length -> Counter(constant)
    transform_max: dict = field(default_factory=dict)  # tag -> max measured distance
    transform_counts: dict = field(default_factory=dict)
    falsifications: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.falsifications and self.max_constant <= self.bound

    def to_text(self) -> str:
        head = f"mode={self.mode}" + (f" seed={self.seed}" if self.seed is not None else "")
        status = "PASS" if self.passed else "FAIL"
        lines = [
            f"# fftp {head} max_len={self.max_len}",
            f"{status}, max constant {self.max_constant} <= 2M={self.bound}",
            f"paths={self.paths_checked} non_geodesic={self.non_geodesic} "
            f"falsifications={len(self.falsifications)}",
        ]
        consts = sorted({c for h in self.histogram.values() for c in h})
        if consts:
            lines.append("length | " + " ".join(f"k={c:<4d}" for c in consts))
            for length in sorted(self.histogram):
                h = self.histogram[length]
                lines.append(f"{length:6d} | " + " ".join(f"{h.get(c, 0):<6d}" for c in consts))
        for tag in sorted(self.transform_max):
            lines.append(
                f"{tag}: applications={self.transform_counts[tag]} max_distance={self.transform_max[tag]}"
            )
        return "\n".join(lines) + "\n"


def _all_words(nletters, max_len):
    for n in range(max_len + 1):
        yield from itertools.product(range(nletters), repeat=n)


def _sample_words(nletters, max_len, count, seed):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(1, max_len)
        yield tuple(rng.randrange(nletters) for _ in range(n))


def _check_words(group: DyerGroup, words, bound, transforms):
    out = {
        "paths": 0, "non_geo": 0, "hist": {}, "tmax": {}, "tcount": {}, "fals": [],
    }
    for w in words:
        out["paths"] += 1
        p = path_from_word(group, w)
        if group.distance(p[0], p[-1]) == len(w):
            continue
        out["non_geo"] += 1
        try:
            cert = shorten_within_tube(group, p, bound)
        except FalsificationEvent:
            out["fals"].append(w)
            continue
        out["hist"].setdefault(len(w), Counter())[cert.fellow_constant] += 1
        if transforms:
            _, trace = shorten_by_transformations(group, p)
            for rec in trace:
                out["tmax"][rec.tag] = max(out["tmax"].get(rec.tag, 0), rec.constant)
                out["tcount"][rec.tag] = out["tcount"].get(rec.tag, 0) + 1
    return out


def _worker(args):
    text, words, bound, transforms = args
    return _check_words(DyerGroup(parse_dyer_graph(text)), words, bound, transforms)


def verify_fftp(group: DyerGroup, max_len: int, mode: str = "exhaustive", sample: int = 0,
                seed: int = 0, transforms: bool = False, threads: int = 1,
                strict: bool = True) -> FFTPReport:
    """Certify every non-geodesic path of length <= max_len read from e.

    ``mode`` is "exhaustive" or "sample" (``sample`` random words drawn with
    ``seed``). With ``transforms`` the backtrack/triangle/flip route is also
    run and its per-application distances recorded. With ``strict`` a
    falsification raises instead of being collected.
    """
    bound = fftp_constant(group)
    nl = len(group.alphabet)
    if mode == "exhaustive":
        words = list(_all_words(nl, max_len))
    elif mode == "sample":
        words = list(_sample_words(nl, max_len, sample, seed))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    rep = FFTPReport(group.graph.serialize(), max_len, bound, mode, seed if mode == "sample" else None)

    if threads > 1:
        chunks = [words[i::threads] for i in range(threads)]
        text = group.graph.serialize()
        with ProcessPoolExecutor(threads) as ex:
            parts = list(ex.map(_worker, [(text, c, bound, transforms) for c in chunks]))
    else:
        parts = [_check_words(group, words, bound, transforms)]

    for part in parts:
        rep.paths_checked += part["paths"]
        rep.non_geodesic += part["non_geo"]
        for length, h in part["hist"].items():
            rep.histogram.setdefault(length, Counter()).update(h)
        for tag, v in part["tmax"].items():
            rep.transform_max[tag] = max(rep.transform_max.get(tag, 0), v)
            rep.transform_counts[tag] = rep.transform_counts.get(tag, 0) + part["tcount"][tag]
        rep.falsifications += part["fals"]
    rep.falsifications.sort(key=lambda w: (len(w), w))
    rep.max_constant = max((c for h in rep.histogram.values() for c in h), default=0)
    if strict and rep.falsifications:
        w = rep.falsifications[0]
        raise FalsificationEvent(f"path {group.format_word(w)} has no shorter {bound}-fellow traveller")
    return rep
