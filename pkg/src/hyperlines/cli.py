"""Command line interface: ``hyperlines <subcommand> ...``.

Exit codes: 0 success / all checks pass, 1 a check failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from . import generators as gen
from .core import RED, BLUE, CapabilityError, Colour, generating_pairs, line_size_distribution, summarize
from .formats import FormatError, format_hl3, parse_graph, read_hl3
from .search import anneal_best_of, bnb_min, exhaustive_min
from .treespace import WeightedGraph, all_pairs_shortest, derive
from .verify import SUITES, run_suite

FAMILIES = ("uniform", "steiner", "pg", "planar", "btree", "compose")
N7_ANNEAL_SEED = 1
N7_ANNEAL_STEPS = 50_000


class UsageError(Exception):
    pass


def _threads(args) -> int:
    if getattr(args, "threads", None):
        return args.threads
    return int(os.environ.get("HYPERLINES_THREADS", "1"))


def _emit(text: str, out: str | None) -> None:
    if out and out != "-":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def read_points(path) -> list[tuple[int, int]]:
    pts = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        body = raw.split("#", 1)[0].split()
        if not body:
            continue
        if len(body) != 2:
            raise FormatError("expected 'x y'", lineno)
        try:
            pts.append((int(body[0]), int(body[1])))
        except ValueError:
            raise FormatError("coordinates must be integers", lineno) from None
    return pts


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_gen(args) -> int:
    fam = args.family
    if fam in ("uniform", "steiner", "btree") and args.n is None:
        raise UsageError(f"--n is required for family {fam}")
    if fam == "uniform":
        S = gen.uniform(args.n, Colour.parse(args.colour))
    elif fam == "steiner":
        S = gen.steiner(args.n)
    elif fam == "btree":
        S = gen.btree_colouring(args.n)
    elif fam == "pg":
        if args.q is None:
            raise UsageError("--q is required for family pg")
        S = gen.projective_plane(args.q)
    elif fam == "planar":
        if args.points:
            S = gen.planar(read_points(args.points))
        elif args.grid:
            S = gen.planar(gen.grid(args.grid))
        else:
            raise UsageError("planar needs --points FILE or --grid K")
    elif fam == "compose":
        if len(args.inputs) != 2:
            raise UsageError("compose takes exactly two .hl3 inputs")
        S = gen.compose(read_hl3(args.inputs[0]), read_hl3(args.inputs[1]))
    else:
        raise UsageError(f"unknown family {fam}")
    _emit(format_hl3(S, args.encoding), args.out)
    return 0


def cmd_compose(args) -> int:
    S = gen.compose(read_hl3(args.first), read_hl3(args.second))
    _emit(format_hl3(S, args.encoding), args.out)
    return 0


def cmd_lines(args) -> int:
    S = read_hl3(args.input)
    L = summarize(S)
    print(L.m_red, L.m_blue, L.m, L.m_star)
    if args.dist:
        for c in (RED, BLUE):
            dist = line_size_distribution(S, c)
            print(f"dist {c.value} " + " ".join(f"{t}:{k}" for t, k in dist.items() if k))
    if args.pairs:
        gp = generating_pairs(S)
        for c in (RED, BLUE):
            for line in sorted(gp.of(c)):
                print(f"pairs {c.value} {len(gp.of(c)[line])} {' '.join(map(str, line.points()))}")
    if args.lines:
        for c in (RED, BLUE):
            for line in sorted(L.lines(c)):
                print(f"line {c.value} {' '.join(map(str, line.points()))}")
    return 0


def cmd_derive(args) -> int:
    n, edges = parse_graph(Path(args.input).read_text())
    try:
        G = WeightedGraph.of(n, edges)
        S = derive(all_pairs_shortest(G))
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    _emit(format_hl3(S, args.encoding), args.out)
    return 0


def cmd_verify(args) -> int:
    inputs = {str(p): read_hl3(p) for p in args.inputs}
    reports = run_suite(args.suite, exhaustive_n=args.exhaustive_n, max_n=args.max_n,
                        samples=args.samples, seed=args.seed, inputs=inputs)
    width = max(len(r.name) for r in reports)
    for r in reports:
        print(f"{r.name:<{width}}  {'PASS' if r.passed else 'FAIL'}  measured={r.measured}  bound={r.bound}")
    if args.machine:
        for r in reports:
            print(r.line())
    failed = [r for r in reports if not r.passed]
    for r in failed:
        print(f"# failing check {r.name}: {r.details}")
        if r.witness is not None:
            sys.stdout.write(format_hl3(r.witness, "bits"))
    return 1 if failed else 0


def _search(n: int, mode: str, seed: int, steps: int, budget: int | None, restarts: int, threads: int):
    if mode == "exhaustive":
        return exhaustive_min(n, symmetry=True)
    if mode == "anneal":
        return anneal_best_of(n, range(seed, seed + restarts), steps, threads=threads)
    if mode == "bnb":
        return bnb_min(n, budget=budget)
    raise UsageError(f"unknown mode {mode}")


def cmd_search(args) -> int:
    rep = _search(args.n, args.mode, args.seed, args.steps, args.budget, args.restarts, _threads(args))
    print(rep.line())
    if args.out:
        Path(args.out).write_text(format_hl3(rep.witness))
    return 0


def cmd_table(args) -> int:
    ns = list(range(2, min(args.max_n, 6) + 1))
    values = [exhaustive_min(n).best_m for n in ns]
    print("n    " + " ".join(f"{n:>3}" for n in ns))
    print("m(n) " + " ".join(f"{m:>3}" for m in values))
    print(" ".join(map(str, values)))
    if args.max_n >= 7:
        if args.n7_mode == "anneal":
            rep = anneal_best_of(7, [N7_ANNEAL_SEED], N7_ANNEAL_STEPS)
        else:
            rep = bnb_min(7, budget=args.budget)
        marker = "" if rep.exhaustive else "<="
        print(f"n=7 m{marker}={rep.best_m} mode={rep.mode} exhaustive={str(rep.exhaustive).lower()}")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperlines", description="Red/blue lines of bi-coloured 3-uniform systems")
    p.add_argument("--threads", type=int, default=None, help="worker cap (default $HYPERLINES_THREADS or 1)")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a generated system as .hl3")
    g.add_argument("--family", required=True, choices=FAMILIES)
    g.add_argument("--n", type=int)
    g.add_argument("--q", type=int, help="prime order for pg")
    g.add_argument("--colour", "--color", default="red")
    g.add_argument("--points", help="file of 'x y' integer rows for planar")
    g.add_argument("--grid", type=int, help="planar k x k integer grid")
    g.add_argument("--inputs", nargs="*", default=[], help="two .hl3 files for compose")
    g.add_argument("--encoding", choices=("red", "bits"), default="red")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("compose", help="compose two .hl3 systems")
    c.add_argument("first")
    c.add_argument("second")
    c.add_argument("--encoding", choices=("red", "bits"), default="red")
    c.add_argument("--out")
    c.set_defaults(func=cmd_compose)

    ln = sub.add_parser("lines", help="print m_red m_blue m m_star of a system")
    ln.add_argument("input")
    ln.add_argument("--dist", action="store_true", help="line size distributions")
    ln.add_argument("--pairs", action="store_true", help="generating-pair multiplicities")
    ln.add_argument("--lines", action="store_true", help="explicit lines")
    ln.set_defaults(func=cmd_lines)

    d = sub.add_parser("derive", help="metric-derived system of a weighted graph file")
    d.add_argument("input")
    d.add_argument("--encoding", choices=("red", "bits"), default="red")
    d.add_argument("--out")
    d.set_defaults(func=cmd_derive)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", default="all", choices=SUITES + ("all",))
    v.add_argument("--exhaustive-n", type=int, default=5)
    v.add_argument("--max-n", type=int, default=8)
    v.add_argument("--samples", type=int, default=200)
    v.add_argument("--seed", type=int, default=1)
    v.add_argument("--machine", action="store_true", help="also print CHECK lines")
    v.add_argument("inputs", nargs="*", help="extra .hl3 systems to check")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="minimise m at fixed n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--mode", choices=("exhaustive", "anneal", "bnb"), default="exhaustive")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--steps", type=int, default=200_000)
    s.add_argument("--restarts", type=int, default=1)
    s.add_argument("--budget", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_search)

    t = sub.add_parser("table", help="reproduce the small-n table of m(n)")
    t.add_argument("--max-n", type=int, default=6)
    t.add_argument("--n7-mode", choices=("bnb", "anneal"), default="bnb")
    t.add_argument("--budget", type=int)
    t.set_defaults(func=cmd_table)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (UsageError, FormatError, CapabilityError, ValueError, OSError) as exc:
        print(f"hyperlines {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
