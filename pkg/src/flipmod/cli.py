"""Command line: build, query, verify and export modular flip-graphs.

Exit codes: 0 ok, 1 input error, 2 budget exceeded, 3 verification failure,
64 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time

from . import suites
from .errors import BudgetExceeded, FlipmodError, InvalidSpec, SpecMismatch
from .explorer import Budget, build_graph, diameter, distance, export_dot, load, save
from .families import parse_family
from .surface import NAMED, TopologySpec, named

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2, 3, 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _env(name, cast, default):
    value = os.environ.get(name)
    return cast(value) if value else default


def parse_spec(text, n):
    """A surface name (``disc``, ``gamma``, ``pi``) or a JSON spec object."""
    if text.lower() in NAMED:
        return named(text, n)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError:
        raise InvalidSpec("parse", f"unknown surface {text!r}") from None
    return TopologySpec.from_json(obj, n)


def parse_range(text):
    """``"3"`` or ``"2..6"`` (inclusive) to a range."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        return range(int(lo), int(hi) + 1)
    return range(int(text), int(text) + 1)


def _family(text, spec):
    T = parse_family(text)
    if T.spec != spec:
        raise SpecMismatch(f"{text} is not a triangulation of {spec.to_json()}")
    return T


def _emit(args, fields, pretty_rows=None):
    if args.pretty and pretty_rows:
        width = max(len(k) for k, _ in pretty_rows)
        for k, v in pretty_rows:
            print(f"{k:<{width}}  {v}")
    else:
        print("\t".join(str(f) for f in fields))


def cmd_build(args):
    spec = parse_spec(args.spec, args.n)
    seed = _family(args.family, spec)
    t0 = time.perf_counter()
    G = build_graph(spec, seed=seed, workers=args.workers, budget=Budget(max_nodes=args.max_nodes))
    secs = time.perf_counter() - t0
    out = args.out or args.path
    if out:
        save(G, out)
    _emit(args, [f"nodes={len(G)}", f"edges={G.num_edges}", f"seconds={secs:.3f}", out or "-"],
          [("nodes", len(G)), ("edges", G.num_edges), ("seconds", f"{secs:.3f}"), ("file", out or "-")])
    return EXIT_OK


def cmd_distance(args):
    spec = parse_spec(args.spec, args.n)
    U, V = _family(args.u, spec), _family(args.v, spec)
    d, seq = distance(U, V, budget=Budget(max_nodes=args.max_nodes))
    arcs = ",".join(str(a) for a in seq.arcs)
    _emit(args, [d, arcs or "-"], [("distance", d), ("flips", arcs or "-")])
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(seq.to_json(), fh, sort_keys=True)
    return EXIT_OK


def cmd_diameter(args):
    G = load(args.graph)
    d, (u, v) = diameter(G)
    _emit(args, [d, u, v], [("diameter", d), ("pair", f"{u} {v}")])
    return EXIT_OK


def cmd_verify(args):
    if args.suite not in suites.SUITES:
        print(f"unknown suite {args.suite!r}; choose from {', '.join(sorted(suites.SUITES))}", file=sys.stderr)
        return EXIT_USAGE
    kw = {"seed": args.seed}
    nrange = parse_range(args.range) if args.range else None
    checks = suites.run(args.suite, nrange=nrange, **kw)
    for c in checks:
        print(c.line())
    return EXIT_OK if all(c.passed for c in checks) else EXIT_VERIFY


def cmd_export(args):
    G = load(args.graph)
    if args.format == "dot":
        export_dot(G, args.out)
    else:
        save(G, args.out)
    _emit(args, [args.format, len(G), G.num_edges, args.out],
          [("format", args.format), ("nodes", len(G)), ("edges", G.num_edges), ("file", args.out)])
    return EXIT_OK


def _options(parser, defaults):
    kw = (lambda v: {"default": v}) if defaults else (lambda v: {"default": argparse.SUPPRESS})
    parser.add_argument("--workers", type=int, **kw(_env("FLIPMOD_WORKERS", int, 1)))
    parser.add_argument("--max-nodes", type=int, **kw(_env("FLIPMOD_MAX_NODES", int, 2_000_000)))
    parser.add_argument("--seed", type=int, help="RNG seed for sampled suites", **kw(_env("FLIPMOD_SEED", int, 0)))
    parser.add_argument("--pretty", action="store_true", help="human-readable output instead of TSV", **kw(False))
    parser.add_argument("--out", help="output file", **kw(None))
    parser.add_argument("-v", "--verbose", action="store_true", **kw(False))


def make_parser():
    p = _Parser(prog="flipmod", description=__doc__.splitlines()[0])
    _options(p, True)
    common = argparse.ArgumentParser(add_help=False)
    _options(common, False)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    b = add("build", help="enumerate a modular flip-graph")
    b.add_argument("spec")
    b.add_argument("n", type=int)
    b.add_argument("family", help="seed triangulation, e.g. Z:6, A:3:-, B:2:+, star:4:1, fan:7:1")
    b.add_argument("path", nargs="?")
    b.set_defaults(func=cmd_build)

    d = add("distance", help="exact flip distance between two family members")
    d.add_argument("spec")
    d.add_argument("n", type=int)
    d.add_argument("u")
    d.add_argument("v")
    d.set_defaults(func=cmd_distance)

    m = add("diameter", help="exact diameter of a saved graph")
    m.add_argument("graph")
    m.set_defaults(func=cmd_diameter)

    v = add("verify", help="run a named verification suite")
    v.add_argument("suite")
    v.add_argument("range", nargs="?", help="n range such as 2..6")
    v.set_defaults(func=cmd_verify)

    e = add("export", help="convert a saved graph")
    e.add_argument("graph")
    e.add_argument("format", choices=["dot", "json"])
    e.add_argument("target", nargs="?")
    e.set_defaults(func=cmd_export)
    return p


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if getattr(args, "target", None):
        args.out = args.target
    if args.command == "export" and not args.out:
        parser.error("export needs an output path")
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (FlipmodError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
