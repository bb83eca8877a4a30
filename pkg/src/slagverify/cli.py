"""Command line interface.

Subcommands:
  check   run the verification pipeline on a configuration file
  example emit one of the built-in example configurations
  plot    render the planar diagram of a configuration to SVG
  quiver  betti numbers and cycle cover of a plain edge-list file

Exit codes: 0 verified / success, 1 hypothesis violated, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .config import ConfigError, dump_config, load_config
from .examples_gen import generate_example
from .pipeline import report_json, report_summary, verify_all
from .quiver import Quiver, betti, cycle_cover


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="slag-verify")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="verify a gluing configuration")
    p.add_argument("config")
    p.add_argument("--report", metavar="OUT.json", help="write the JSON report here")
    p.add_argument("--tolerance", type=float, default=None,
                   help="geometric tolerance (default 1e-9)")
    p.add_argument("--mode", choices=["main", "graph"], default="graph")

    p = sub.add_parser("example", help="emit a built-in example configuration")
    p.add_argument("id", type=int, choices=[1, 2, 3])
    p.add_argument("-o", "--output", help="output path (default: stdout)")
    p.add_argument("--n", type=int, help="rank for example 1")
    p.add_argument("--a", type=float, nargs="+", help="shape parameters, example 1")
    p.add_argument("--a-plus", type=int, nargs="+",
                   help="first coordinate group (1-based), example 1")
    p.add_argument("--r1", type=float, help="odd-step scale, example 2")
    p.add_argument("--r2", type=float, help="even-step scale, example 2")
    p.add_argument("--N", type=int, help="number of squares, example 3")
    p.add_argument("--width", type=float, help="first-factor width, example 3")
    p.add_argument("--height", type=float, help="first-factor height, example 3")
    p.add_argument("--c", type=float, help="segment height, example 3")

    p = sub.add_parser("plot", help="render a planar configuration to SVG")
    p.add_argument("config")
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("quiver", help="analyze a plain edge-list file")
    p.add_argument("edges", help="text file, one 'src -> dst' per line")
    return ap


def _cmd_check(args) -> int:
    from . import core

    cfg = load_config(args.config)
    eps = args.tolerance if args.tolerance is not None else core.EPS_GEOM
    report = verify_all(cfg, mode=args.mode, eps=eps)
    sys.stdout.write(report_summary(report))
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(report_json(report))
    return 0 if report["ok"] else 1


def _cmd_example(args) -> int:
    params = {}
    if args.id == 1:
        if args.n is not None:
            params["n"] = args.n
        if args.a is not None:
            params["a"] = args.a
        if args.a_plus is not None:
            params["a_plus"] = args.a_plus
    elif args.id == 2:
        if args.r1 is not None:
            params["r1"] = args.r1
        if args.r2 is not None:
            params["r2"] = args.r2
    else:
        if args.N is not None:
            params["N"] = args.N
        if args.width is not None:
            params["a"] = args.width
        if args.height is not None:
            params["b"] = args.height
        if args.c is not None:
            params["c"] = args.c
    cfg = generate_example(args.id, **params)
    if args.output:
        dump_config(cfg, args.output)
    else:
        json.dump(cfg, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
    return 0


def _cmd_plot(args) -> int:
    from .plotting import plot_config

    cfg = load_config(args.config)
    plot_config(cfg, args.output)
    return 0


def _cmd_quiver(args) -> int:
    with open(args.edges, "r", encoding="utf-8") as fh:
        q = Quiver.from_text(fh.read())
    h0, h1 = betti(q)
    cert = cycle_cover(q)
    print(f"vertices: {len(q.vertices)}  edges: {len(q.edges)}")
    print(f"h0: {h0}  h1: {h1}")
    print(f"cycle cover: {'yes' if cert.covered else 'no'}")
    if cert.covered:
        for cyc in cert.cycles:
            path = " -> ".join(q.edges[j][0] for j in cyc)
            print(f"  cycle: {path} -> {q.edges[cyc[0]][0]}")
    else:
        for j, ok in enumerate(cert.edge_covered):
            if not ok:
                s, t = q.edges[j]
                print(f"  uncovered: {s} -> {t}")
    return 0 if cert.covered else 1


def main(argv=None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if args.command == "check":
            return _cmd_check(args)
        if args.command == "example":
            return _cmd_example(args)
        if args.command == "plot":
            return _cmd_plot(args)
        return _cmd_quiver(args)
    except (ConfigError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry():
    raise SystemExit(main())
