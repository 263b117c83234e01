"""Command-line entry point: knotselmer --fixture NAME | --input PATH."""

import argparse
import sys

from ..errors import ParseError
from .fixtures import fixture_names, fixture_text
from .jobfile import parse_job
from .report import emit
from .runner import run


def _parser():
    ap = argparse.ArgumentParser(prog="knotselmer",
                                 description="Adjoint Selmer modules of SL2 knot-group representations.")
    src = ap.add_mutually_exclusive_group()
    src.add_argument("--input", metavar="PATH", help="job file to run")
    src.add_argument("--fixture", metavar="NAME", help="run a bundled job file")
    src.add_argument("--list-fixtures", action="store_true", help="list bundled job files")
    ap.add_argument("--precision-s", type=int, metavar="N", help="override the series precision")
    ap.add_argument("--precision-p", type=int, metavar="N", help="override the p-adic precision")
    ap.add_argument("--format", choices=("text", "structured"), default="text")
    ap.add_argument("--task", metavar="NAME", help="run only tasks of this kind")
    ap.add_argument("--define", action="append", default=[], metavar="NAME=EXPR",
                    help="override a let-bound constant (repeatable)")
    return ap


def main(argv=None):
    args = _parser().parse_args(argv)
    if args.list_fixtures:
        for name in fixture_names():
            print(name)
        return 0
    try:
        if args.fixture:
            text = fixture_text(args.fixture)
        elif args.input:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        else:
            print("knotselmer: give --input PATH, --fixture NAME or --list-fixtures", file=sys.stderr)
            return 2
    except (OSError, KeyError) as exc:
        print(f"knotselmer: {exc}", file=sys.stderr)
        return 2
    for p in (args.precision_s, args.precision_p):
        if p is not None and p < 1:
            print("knotselmer: precisions must be positive", file=sys.stderr)
            return 2
    defines = {}
    for d in args.define:
        name, sep, expr = d.partition("=")
        if not sep:
            print(f"knotselmer: --define expects NAME=EXPR, got {d!r}", file=sys.stderr)
            return 2
        defines[name.strip()] = expr
    try:
        job = parse_job(text, defines)
        report = run(job, args.precision_s, args.precision_p, args.task)
    except ParseError as exc:
        print(f"knotselmer: parse error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(emit(report, args.format))
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
