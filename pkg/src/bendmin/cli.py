"""Command-line front end.

Reads graph JSON (file or ``-`` for stdin), runs one solver mode and prints
``bends: N``.  Outputs are picked by file name: ``*.svg`` gets SVG, a name
starting with ``drawing`` gets drawing JSON, any other name the canonical
representation JSON.  Exit codes: 2 input error, 3 internal invariant
failure, 4 oracle mismatch.
"""

from __future__ import annotations

import argparse
import os
import sys

from .dp import SolverConfig, bend_min_global, bend_min_ref_edge, bend_min_vertex
from .errors import EdgeNotFound, InputError, InvariantError
from .graph import graph_from_json
from .oracle import brute_min_bends, brute_min_bends_edge, brute_min_bends_vertex
from .ortho import validate_rep
from .realize import check_drawing, compact, emit_json, emit_svg

EXIT_INPUT = 2
EXIT_INVARIANT = 3
EXIT_ORACLE = 4


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bendmin", description=__doc__.splitlines()[0])
    p.add_argument("--input", required=True, help="graph JSON file, or - for stdin")
    p.add_argument("--mode", choices=("global", "edge", "vertex"), default="global")
    p.add_argument("--edge", help="reference edge as u,v (edge mode)")
    p.add_argument("--vertex", type=int, help="reference vertex (vertex mode)")
    p.add_argument("--out", action="append", default=[], help="output file; repeatable")
    p.add_argument("--validate", action="store_true", help="validate the representation and drawing")
    p.add_argument("--oracle-check", action="store_true", help="compare with brute force (n <= 8)")
    p.add_argument("--jobs", type=int, default=1, help="processes for the global loop")
    p.add_argument("--format", choices=("text", "json"), default="text",
                   help="json also prints the representation to stdout")
    return p


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _parse_edge(g, text: str | None) -> int:
    if text is None:
        raise EdgeNotFound("edge mode needs --edge u,v")
    try:
        u, v = (int(x) for x in text.split(","))
    except ValueError as exc:
        raise EdgeNotFound(f"bad edge {text!r}") from exc
    e = g.edge_id(u, v) if 0 <= u < g.n and 0 <= v < g.n else None
    if e is None:
        raise EdgeNotFound(f"no edge {u},{v}")
    return e


def run(args: argparse.Namespace) -> int:
    g, _ = graph_from_json(_read(args.input))
    config = SolverConfig(jobs=max(1, args.jobs), validate=args.validate)
    if args.mode == "edge":
        e = _parse_edge(g, args.edge)
        res = bend_min_ref_edge(g, e, config)
        oracle = (lambda: brute_min_bends_edge(g, e))
    elif args.mode == "vertex":
        if args.vertex is None:
            raise InputError("vertex mode needs --vertex")
        res = bend_min_vertex(g, args.vertex, config)
        oracle = (lambda: brute_min_bends_vertex(g, args.vertex))
    else:
        res = bend_min_global(g, config)
        oracle = (lambda: brute_min_bends(g))
    print(f"bends: {res.bends}")
    if args.validate:
        report = validate_rep(res.rep)
        if not report:
            raise InvariantError(f"invalid representation: {report.reason}")
    drawing = None
    for path in args.out:
        name = os.path.basename(path)
        if name.endswith(".svg") or name.startswith("drawing"):
            if drawing is None:
                drawing = compact(res.rep)
                if args.validate and check_drawing(res.rep, drawing):
                    raise InvariantError("drawing does not realize the representation")
            text = emit_svg(drawing) if name.endswith(".svg") else emit_json(drawing) + "\n"
        else:
            text = res.rep.to_json() + "\n"
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    if args.format == "json":
        print(res.rep.to_json())
    if args.oracle_check:
        expected = oracle()
        if expected != res.bends:
            print(f"oracle mismatch: solver {res.bends}, brute force {expected}", file=sys.stderr)
            return EXIT_ORACLE
        print("oracle: ok")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InvariantError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
