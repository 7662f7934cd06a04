"""Command-line surface.

Subcommands: expand a minor symbol, straighten a product, list a
standard basis cell, tabulate dimensions against standard counts, and
run the named verification suites.  All output is deterministic for a
fixed command line and seed.

Exit codes: 0 success, 1 usage error, 2 a check suite failed,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass

from . import suites
from .errors import InvariantViolation, UsageError
from .minors import minor_to_obj, parse_minor, parse_product
from .ring import poly_to_obj
from .straighten import graded_dim, straighten
from .tableaux import enumerate_standard
from .minors import expand_minor

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CHECK_FAILED = 2
EXIT_INVARIANT = 3


@dataclass
class RunConfig:
    p: int = 2
    q: int = 2
    h: int = 1
    max_degree: int = 2
    max_weight: int = 2
    fmt: str = "json"
    seed: int = 0
    threads: int = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="arcstraight", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_sizes(sp, degree_flags=True):
        sp.add_argument("--p", type=int, default=2)
        sp.add_argument("--q", type=int, default=2)
        sp.add_argument("--h", type=int, default=1)
        if degree_flags:
            sp.add_argument("--max-degree", type=int, default=2)
            sp.add_argument("--max-weight", type=int, default=2)

    sp = sub.add_parser("expand", help="expand a minor symbol to a polynomial")
    sp.add_argument("--minor", required=True, metavar="WT:(ROWS|COLS)")
    sp.add_argument("--format", choices=("json", "text"), default="json")

    sp = sub.add_parser("straighten", help="rewrite a product in the standard basis")
    add_sizes(sp, degree_flags=False)
    sp.add_argument("--product", required=True, metavar="SYMBOL[,SYMBOL...]")
    sp.add_argument("--format", choices=("json", "text"), default="json")

    sp = sub.add_parser("basis", help="list the standard products of one bidegree")
    add_sizes(sp, degree_flags=False)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--weight", type=int, required=True)
    sp.add_argument("--format", choices=("json", "text"), default="json")

    sp = sub.add_parser("dims", help="tabulate quotient dimensions vs standard counts")
    add_sizes(sp)
    sp.add_argument("--format", choices=("json", "csv", "text"), default="csv")

    sp = sub.add_parser("check", help="run a verification suite")
    sp.add_argument("suite", choices=sorted(suites.SUITES) + ["all"])
    add_sizes(sp)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--format", choices=("json", "text"), default="text")
    return parser


def _emit(text: str) -> None:
    sys.stdout.write(text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")


def _cmd_expand(args) -> int:
    poly = expand_minor(parse_minor(args.minor))
    if args.format == "json":
        _emit(json.dumps(poly_to_obj(poly), sort_keys=True))
    else:
        _emit(repr(poly))
    return EXIT_OK


def _cmd_straighten(args) -> int:
    comb = straighten(parse_product(args.product), args.p, args.q, args.h)
    if args.format == "json":
        _emit(json.dumps(comb.to_obj(), sort_keys=True))
    else:
        _emit(repr(comb))
    return EXIT_OK


def _cmd_basis(args) -> int:
    prods = enumerate_standard(args.p, args.q, args.h, args.degree, args.weight)
    if args.format == "json":
        _emit(json.dumps([[minor_to_obj(j) for j in s] for s in prods],
                         sort_keys=True))
    else:
        for s in prods:
            _emit(" ".join(str(j) for j in s) if s else "(empty product)")
        _emit(f"total: {len(prods)}")
    return EXIT_OK


def _cmd_dims(args) -> int:
    rows = []
    for d in range(args.max_degree + 1):
        for w in range(args.max_weight + 1):
            rows.append({
                "d": d, "w": w,
                "standard_count": len(enumerate_standard(
                    args.p, args.q, args.h, d, w)),
                "graded_dim": graded_dim(args.p, args.q, args.h, d, w)})
    if args.format == "json":
        _emit(json.dumps(rows, sort_keys=True))
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=["d", "w", "standard_count",
                                                 "graded_dim"])
        writer.writeheader()
        writer.writerows(rows)
        _emit(buf.getvalue())
    else:
        for r in rows:
            _emit(f"d={r['d']} w={r['w']}  standard={r['standard_count']}"
                  f"  dim={r['graded_dim']}")
    return EXIT_OK


def _run_suite(name: str, args) -> suites.CheckReport:
    cfg_idx = max(args.p, args.q)
    if name in ("basis", "leading", "invariants"):
        fn = suites.SUITES[name]
        return fn(args.p, args.q, args.h, args.max_degree, args.max_weight)
    if name == "sft":
        return suites.check_sft(args.h, args.max_weight)
    if name == "criterion":
        return suites.check_criterion(
            max_size=min(args.h + 1, 3), max_wt_e=args.max_weight,
            max_idx=min(cfg_idx + 1, 4), max_wt_j=args.max_weight + 1,
            seed=args.seed, sz3_samples=500)
    if name == "relations":
        return suites.check_relations(max_s=min(args.p + args.q, 4),
                                      max_order=args.max_weight)
    if name == "straighten":
        return suites.check_straighten(
            args.p, args.q, args.h, max_symbols=2,
            max_symbol_size=min(args.h, 2),
            max_symbol_wt=min(args.max_weight, 2))
    if name == "calculus":
        return suites.check_calculus(args.p, args.q, args.h, seed=args.seed,
                                     cases=25)
    raise UsageError(f"unknown suite {name!r}")


def _cmd_check(args) -> int:
    names = sorted(suites.SUITES) if args.suite == "all" else [args.suite]
    reports = [_run_suite(name, args) for name in names]
    ok = all(r.passed for r in reports)
    if args.format == "json":
        _emit(json.dumps([r.to_obj() for r in reports], sort_keys=True))
    else:
        for r in reports:
            status = "PASS" if r.passed else "FAIL"
            _emit(f"{status} {r.suite}: {r.checked} checks")
            if not r.passed:
                _emit(json.dumps(r.to_obj(), sort_keys=True))
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        args.threads = int(os.environ.get("ARCSTRAIGHT_THREADS", "1"))
        handler = {
            "expand": _cmd_expand,
            "straighten": _cmd_straighten,
            "basis": _cmd_basis,
            "dims": _cmd_dims,
            "check": _cmd_check,
        }[args.command]
        return handler(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
