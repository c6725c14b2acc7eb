"""``egl`` command line.

Exit codes: 0 success, 1 presentation syntax/validation error,
2 materialization failure, 3 search budget exceeded (partial report
printed), 4 a verify claim failed or was inconclusive.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import catalog
from .engine import materialize, save_table
from .errors import (
    CosetLimitExceeded,
    DuplicateGenerator,
    InvalidMatrix,
    OrderLimitExceeded,
    OrderMismatch,
    PresentationSyntaxError,
    UndeclaredSymbol,
)
from .morphisms import DEFAULT_BUDGET
from .presentation import load_presentation
from .report import analyze, format_text

EXIT_SYNTAX, EXIT_MATERIALIZE, EXIT_BUDGET, EXIT_CLAIMS = 1, 2, 3, 4
_PARSE_ERRORS = (PresentationSyntaxError, DuplicateGenerator, UndeclaredSymbol)
_BUILD_ERRORS = (CosetLimitExceeded, OrderMismatch, OrderLimitExceeded, InvalidMatrix)


def _emit_report(G, args, hints=()):
    rep = analyze(G, budget=args.budget, threads=args.threads, fail_fast=args.fail_fast, hints=hints)
    if args.json:
        print(json.dumps(rep.to_dict(timing=args.timing), indent=2, sort_keys=True))
    else:
        if not args.timing:
            rep.timing = {}
        print(format_text(rep))
    return 0 if rep.budget["exhausted"] else EXIT_BUDGET


def cmd_analyze(args):
    try:
        pres = load_presentation(args.path)
    except _PARSE_ERRORS as exc:
        print(f"{args.path}: {exc}", file=sys.stderr)
        return EXIT_SYNTAX
    try:
        G = materialize(pres, max_cosets=args.max_cosets)
    except _BUILD_ERRORS as exc:
        print(f"{args.path}: {exc}", file=sys.stderr)
        return EXIT_MATERIALIZE
    return _emit_report(G, args)


def _parse_matrix(text):
    vals = [int(v) for v in text.split(",")]
    if len(vals) != 9:
        raise argparse.ArgumentTypeError("matrix needs 9 comma-separated integers")
    return tuple(tuple(vals[3 * i : 3 * i + 3]) for i in range(3))


def cmd_construct(args):
    hints = ()
    try:
        if args.family == "faudree":
            pres = catalog.faudree(args.p)
            out = Path(args.out or f"faudree_{args.p}.grp")
            out.write_text(pres.to_text(), encoding="utf-8")
            print(f"wrote {out}", file=sys.stderr)
            if not args.verify:
                return 0
            G = materialize(pres)
            if args.p == 2:
                from .verify import faudree_swap_images

                hints = ((faudree_swap_images(G), G.generators[2]),)
        else:
            params = catalog.ThreeGenParams(args.p, args.r, args.t, args.matrix)
            pres = catalog.threegen_presentation(params)
            out = Path(args.out or f"{params.key}.grp")
            out.write_text(pres.to_text(), encoding="utf-8")
            print(f"wrote {out}", file=sys.stderr)
            G = None
            if args.table or args.verify:
                G = catalog.threegen_epsilon(params)
            if args.table:
                tpath = out.with_suffix(".egl")
                save_table(G, tpath)
                print(f"wrote {tpath}", file=sys.stderr)
            if not args.verify:
                return 0
    except (ValueError,) + _BUILD_ERRORS as exc:
        print(f"construct: {exc}", file=sys.stderr)
        return EXIT_MATERIALIZE
    return _emit_report(G, args, hints)


def cmd_verify(args):
    from .verify import run_suite

    def progress(res):
        if not args.json:
            t = f"  {res.seconds:8.2f}s" if args.timing else ""
            print(f"{res.verdict.upper():13s} {res.id:32s}{t}  {res.about}", flush=True)
            if res.verdict != "pass" or args.verbose:
                print(f"{'':14s}{res.detail}", flush=True)

    results = run_suite(args.suite, budget=args.budget, progress=progress, only=args.only)
    if args.json:
        print(json.dumps({"schema": 1, "suite": args.suite, "claims": [r.as_dict(timing=args.timing) for r in results]},
                         indent=2, sort_keys=True))
    failed = [r for r in results if r.verdict != "pass"]
    if not args.json:
        print(f"{len(results) - len(failed)}/{len(results)} claims pass")
    return EXIT_CLAIMS if failed else 0


def cmd_catalog(args):
    for key in catalog.keys():
        if key.startswith("cyclic"):
            print(f"{key:12s}  cyclic group of order n")
            continue
        e = catalog.named(key)
        order = e.expected.get("order", "?")
        print(f"{key:12s}  order {order}")
    return 0


def build_parser():
    ap = argparse.ArgumentParser(prog="egl", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    def search_opts(p):
        p.add_argument("--json", action="store_true")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node limit")
        p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
        p.add_argument("--fail-fast", action="store_true", help="order the E-search to find counterexamples early")
        p.add_argument("--timing", action="store_true", help="include wall-clock timings (breaks byte-identical output)")

    a = sub.add_parser("analyze", help="analyze a .grp presentation")
    a.add_argument("path")
    a.add_argument("--max-cosets", type=int, default=200_000)
    search_opts(a)
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("construct", help="write a parametric group as .grp (and optionally a table)")
    c.add_argument("family", choices=["faudree", "threegen"])
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--r", type=int, default=1)
    c.add_argument("--t", type=int, default=1)
    c.add_argument("--matrix", type=_parse_matrix, default=((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    c.add_argument("--out")
    c.add_argument("--table", action="store_true", help="also write the EGL1 multiplication table (threegen)")
    c.add_argument("--verify", action="store_true", help="analyze the constructed group")
    search_opts(c)
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="run the claim suites")
    v.add_argument("suite", choices=["core", "extended"])
    v.add_argument("--json", action="store_true")
    v.add_argument("--budget", type=int, default=None)
    v.add_argument("--only", action="append", help="run only claims whose id starts with this prefix")
    v.add_argument("--timing", action="store_true")
    v.add_argument("-v", "--verbose", action="store_true")
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("catalog", help="catalog utilities")
    k.add_argument("action", choices=["list"])
    k.set_defaults(func=cmd_catalog)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
