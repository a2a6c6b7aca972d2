"""``dyergeo`` command-line front end.

Every report starts with ``#`` header lines recording the command and its
parameters (including the seed) and contains nothing time- or
machine-dependent, so identical invocations give byte-identical output.

Exit status: 0 on success, 1 when a check fails or a falsification or
consistency event fires, 2 for usage, syntax or compatibility errors,
3 when a resource cap (elements or seconds) is hit.
"""

from __future__ import annotations

import argparse
import contextlib
import signal
import sys
from dataclasses import dataclass
from pathlib import Path

from . import cones, fftp, mediangle
from .cayley import DEFAULT_MAX_ELEMENTS, ResourceLimitError, build_ball
from .graph import DyerGraph, DyerGraphError, classify, max_edge_label, parse_dyer_graph
from .words import DyerGroup, parse_word

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
DEFAULT_MAX_SECONDS = 300


class TimeLimitError(RuntimeError):
    pass


@dataclass(frozen=True)
class RunConfig:
    input: Path
    command: str
    radius: int | None = None
    max_len: int = 5
    terms: int = 8
    sample: int = 0
    seed: int = 0
    format: str = "text"
    threads: int = 1
    max_elements: int = DEFAULT_MAX_ELEMENTS
    max_seconds: float = DEFAULT_MAX_SECONDS
    kind: str = "geodesic"
    word: str | None = None
    rational: bool = False
    raw: bool = False
    strict: bool = True

    def validate(self):
        for name in ("max_len", "terms", "sample", "seed", "threads", "max_elements"):
            if getattr(self, name) < 0:
                raise ValueError(f"--{name.replace('_', '-')} must be non-negative")
        if self.radius is not None and self.radius < 0:
            raise ValueError("--radius must be non-negative")
        if self.threads < 1:
            raise ValueError("--threads must be at least 1")
        if self.max_seconds <= 0:
            raise ValueError("--max-seconds must be positive")

    def header(self, **extra) -> str:
        parts = [f"# dyergeo {self.command} {self.input.name}"]
        fields = {"seed": self.seed, **extra}
        parts.append("# " + " ".join(f"{k}={v}" for k, v in fields.items()))
        return "\n".join(parts)


def _load(cfg: RunConfig) -> DyerGraph:
    return parse_dyer_graph(cfg.input.read_text())


def _label(group: DyerGroup, ball):
    return lambda i: group.format_word(ball.elements[i]) or "e"


# -- commands ---------------------------------------------------------------


def cmd_validate(cfg: RunConfig) -> int:
    g = _load(cfg)
    print(cfg.header())
    print(
        f"valid: vertices={len(g)} edges={len(g.edges)} M={max_edge_label(g)} "
        f"class={classify(g).value}"
    )
    return EXIT_OK


def cmd_ball(cfg: RunConfig) -> int:
    group = DyerGroup(_load(cfg))
    r = 3 if cfg.radius is None else cfg.radius
    ball = build_ball(group, r, cfg.max_elements)
    if cfg.format == "dot":
        sys.stdout.write(ball.to_dot())
        return EXIT_OK
    if cfg.format == "csv":
        print("index,word,length")
        for i, w in enumerate(ball.elements):
            print(f"{i},{group.format_word(w) or 'e'},{len(w)}")
        return EXIT_OK
    print(cfg.header(radius=r))
    print(f"elements={len(ball)} edges={len(ball.edge_list())} closed={ball.closed}")
    print("spheres=" + ",".join(map(str, ball.sphere_sizes)))
    return EXIT_OK


def cmd_mediangle(cfg: RunConfig) -> int:
    group = DyerGroup(_load(cfg))
    r = 4 if cfg.radius is None else cfg.radius
    ball = build_ball(group, r, cfg.max_elements)
    reports = mediangle.check_all(ball)
    print(cfg.header(radius=r))
    for rep in reports.values():
        print(rep.to_text(_label(group, ball)))
    ok = all(rep.passed for rep in reports.values())
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_hyperplanes(cfg: RunConfig) -> int:
    group = DyerGroup(_load(cfg))
    r = 3 if cfg.radius is None else cfg.radius
    ball = build_ball(group, r, cfg.max_elements)
    hp = mediangle.compute_hyperplanes(ball)
    if cfg.format == "csv":
        sys.stdout.write(hp.to_csv(_label(group, ball)))
        return EXIT_OK
    print(cfg.header(radius=r))
    sizes = sorted((len(c) for c in hp.classes()), reverse=True)
    print(f"edges={len(hp.edges)} classes={len(hp)}")
    print("class_sizes=" + ",".join(map(str, sizes)))
    if r >= 2 * max_edge_label(group.graph):
        crit = mediangle.verify_hyperplane_criterion(group, r, cfg.max_len)
        print(
            f"criterion: {'PASS' if crit.passed else 'FAIL'} paths={crit.paths_checked} "
            f"soundness_failures={len(crit.soundness_failures)} "
            f"completeness_failures={len(crit.completeness_failures)}"
            + (f" retried_at={crit.retried_at}" if crit.retried_at else "")
        )
        return EXIT_OK if crit.passed else EXIT_FAIL
    return EXIT_OK


def _word(cfg: RunConfig, group: DyerGroup):
    return parse_word(group.graph, cfg.word or "", group.letter_index)


def cmd_geodesic(cfg: RunConfig) -> int:
    group = DyerGroup(_load(cfg))
    w = _word(cfg, group)
    M = max_edge_label(group.graph)
    depth = max(len(x) for x in fftp.path_from_word(group, w))
    r = max(depth + M, cfg.radius or 0)
    ball = build_ball(group, r, cfg.max_elements)
    hp = mediangle.compute_hyperplanes(ball)
    v = mediangle.geodesic_verdict(ball, hp, ball.path_from_word(w))
    print(cfg.header(radius=r, word=group.format_word(w) or "e"))
    if v.geodesic:
        print("geodesic; " + ("hyperplane class repeated" if v.repeated_class else "no hyperplane class repeated"))
    else:
        print("non-geodesic; " + ("hyperplane class repeated" if v.repeated_class else "no hyperplane class repeated"))
    print(f"normal_form={group.format_word(group.normal_form(w)) or 'e'}")
    # the two tests disagreeing is a criterion failure
    return EXIT_OK if v.geodesic != v.repeated_class else EXIT_FAIL


def cmd_shorten(cfg: RunConfig) -> int:
    group = DyerGroup(_load(cfg))
    w = _word(cfg, group)
    p = fftp.path_from_word(group, w)
    print(cfg.header(word=group.format_word(w) or "e", k=fftp.fftp_constant(group)))
    cert = fftp.shorten_within_tube(group, p)
    if cert is None:
        print("geodesic; nothing to shorten")
        return EXIT_OK
    letters = fftp.step_letters(group, cert.replacement)
    print(f"replacement={group.format_word(letters) or 'e'}")
    print(f"length {len(p) - 1} -> {len(cert.replacement) - 1}, fellow constant {cert.fellow_constant}")
    return EXIT_OK


def cmd_fftp(cfg: RunConfig) -> int:
    group = DyerGroup(_load(cfg))
    mode = "sample" if cfg.sample else "exhaustive"
    rep = fftp.verify_fftp(group, cfg.max_len, mode, cfg.sample, cfg.seed,
                           transforms=True, threads=cfg.threads, strict=False)
    print(cfg.header(max_len=cfg.max_len, sample=cfg.sample))
    sys.stdout.write(rep.to_text())
    for w in rep.falsifications[:10]:
        print("falsification: " + group.format_word(w))
    return EXIT_OK if rep.passed else EXIT_FAIL


def _conflict_lines(group: DyerGroup, a: cones.GeodesicAutomaton) -> list[str]:
    out = []
    for g, h, x in a.meta["conflicts"][:10]:
        out.append(
            f"conflict: {group.format_word(g) or 'e'} | {group.format_word(h) or 'e'} "
            f"after {group.format_word((x,))}"
        )
    return out


def cmd_automaton(cfg: RunConfig) -> int:
    group = DyerGroup(_load(cfg))
    try:
        a = cones.build_geodesic_automaton(group, max_radius=cfg.radius, strict=cfg.strict)
    except cones.ConsistencyError as e:
        print(cfg.header(radius=cfg.radius))
        print(f"consistency error: {e}")
        return EXIT_FAIL
    m = cones.minimize(a)
    out = a if cfg.raw else m
    conflicts = a.meta["conflicts"]
    if cfg.format == "dot":
        sys.stdout.write(out.to_dot(group))
    else:
        print(cfg.header(radius=cfg.radius, k=a.meta["k"]))
        print(
            f"profile_states={len(a)} minimized_states={len(m)} complete={a.complete} "
            f"conflicts={len(conflicts)}"
        )
        for line in _conflict_lines(group, a):
            print(line)
        sys.stdout.write(out.to_table(group))
    if conflicts:
        return EXIT_FAIL
    return EXIT_OK if a.complete else EXIT_CAP


def cmd_growth(cfg: RunConfig) -> int:
    group = DyerGroup(_load(cfg))
    print(cfg.header(kind=cfg.kind, terms=cfg.terms))
    if cfg.kind == "spherical":
        print(",".join(map(str, cones.spherical_growth(group, cfg.terms, cfg.max_elements))))
        return EXIT_OK
    try:
        full = cones.build_geodesic_automaton(group, strict=cfg.strict)
    except cones.ConsistencyError as e:
        print(f"consistency error: {e}")
        return EXIT_FAIL
    a = cones.minimize(full)
    print(",".join(map(str, cones.geodesic_growth(a, cfg.terms))))
    if cfg.rational:
        num, den = cones.growth_rational(a, cancel=True)
        print("numerator: " + cones.format_polynomial(num))
        print("denominator: " + cones.format_polynomial(den))
    if full.meta["conflicts"]:
        print(f"conflicts={len(full.meta['conflicts'])}")
        return EXIT_FAIL
    return EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "ball": cmd_ball,
    "mediangle": cmd_mediangle,
    "hyperplanes": cmd_hyperplanes,
    "geodesic": cmd_geodesic,
    "shorten": cmd_shorten,
    "fftp": cmd_fftp,
    "automaton": cmd_automaton,
    "growth": cmd_growth,
}


# -- argument handling --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", type=Path, help="Dyer graph file")
    common.add_argument("--radius", type=int, help="ball radius / exploration cap")
    common.add_argument("--max-len", type=int, default=5)
    common.add_argument("--terms", type=int, default=8)
    common.add_argument("--sample", type=int, default=0, help="random paths instead of exhaustive")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("text", "dot", "csv"), default="text")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--max-elements", type=int, default=DEFAULT_MAX_ELEMENTS)
    common.add_argument("--max-seconds", type=float, default=DEFAULT_MAX_SECONDS)

    p = argparse.ArgumentParser(prog="dyergeo", description="Geometry of Dyer groups.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name in ("geodesic", "shorten"):
            sp.add_argument("word", nargs="+", help='word such as "u^1 v^1 u^1"')
        if name == "growth":
            sp.add_argument("--kind", choices=("geodesic", "spherical"), default="geodesic")
            sp.add_argument("--rational", action="store_true", help="also print the rational form")
        if name == "automaton":
            sp.add_argument("--raw", action="store_true", help="print the unminimised profile automaton")
        if name in ("automaton", "growth"):
            sp.add_argument(
                "--no-strict", dest="strict", action="store_false",
                help="record profile consistency conflicts instead of aborting (exit status stays 1)",
            )
    return p


@contextlib.contextmanager
def _time_limit(seconds: float):
    if not hasattr(signal, "SIGALRM"):
        yield
        return

    def fire(signum, frame):
        raise TimeLimitError(f"time limit of {seconds:g}s exceeded")

    old = signal.signal(signal.SIGALRM, fire)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        input=args.input,
        command=args.command,
        radius=args.radius,
        max_len=args.max_len,
        terms=args.terms,
        sample=args.sample,
        seed=args.seed,
        format=args.format,
        threads=args.threads,
        max_elements=args.max_elements,
        max_seconds=args.max_seconds,
        kind=getattr(args, "kind", "geodesic"),
        word=" ".join(args.word) if getattr(args, "word", None) else None,
        rational=getattr(args, "rational", False),
        raw=getattr(args, "raw", False),
        strict=getattr(args, "strict", True),
    )
    try:
        cfg.validate()
    except ValueError as e:
        print(f"dyergeo: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        with _time_limit(cfg.max_seconds):
            return COMMANDS[cfg.command](cfg)
    except OSError as e:
        print(f"dyergeo: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except DyerGraphError as e:
        print(f"dyergeo: {cfg.input}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ResourceLimitError, cones.StateLimitError, TimeLimitError) as e:
        print(f"dyergeo: resource cap hit: {e}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as e:
        print(f"dyergeo: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
