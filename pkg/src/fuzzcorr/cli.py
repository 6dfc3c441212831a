"""Command-line entry point: ``fuzzcorr eval|check SCRIPT``.

Exit codes: 0 success, 1 a check or compare failed, 2 usage/parse/name
error, 3 numeric-domain error raised by a library operation.
"""
from __future__ import annotations

import argparse
import sys

from . import dsl
from .emit import FORMATS
from .interpreter import RunConfig, run


def _positive_levels(text: str) -> int:
    n = int(text)
    if n < 2:
        raise argparse.ArgumentTypeError("need at least 2 levels")
    return n


def _tol(text: str) -> float:
    x = float(text)
    if not x >= 0:
        raise argparse.ArgumentTypeError("tolerance must be non-negative")
    return x


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fuzzcorr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (("eval", "run a script and emit every printed value"),
                            ("check", "run a script and emit only check/compare reports")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("script", help="path to a UTF-8 script file")
        p.add_argument("--levels", type=_positive_levels, default=101,
                       help="number of alpha levels (default: 101)")
        p.add_argument("--format", choices=FORMATS, default="csv")
        p.add_argument("--tol", type=_tol, default=1e-9,
                       help="tolerance used by compare (default: 1e-9)")
        p.add_argument("--oracle-grid", type=_positive_levels, default=2001,
                       help="input grid of the brute-force oracle (default: 2001)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with open(args.script, encoding="utf-8") as fh:
            source = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        print(f"fuzzcorr: cannot read {args.script}: {exc}", file=sys.stderr)
        return 2

    config = RunConfig(levels=args.levels, format=args.format, tol=args.tol,
                       oracle_grid=args.oracle_grid, mode=args.command)
    try:
        result = run(dsl.parse(source), config)
    except dsl.ScriptError as exc:
        kind = "error" if exc.exit_code == 2 else "domain error"
        sep = "" if exc.line else " "
        print(f"{args.script}:{sep}{exc}", file=sys.stderr)
        print(f"fuzzcorr: {kind}", file=sys.stderr)
        return exc.exit_code

    sys.stdout.write(result.text)
    for msg in result.failures:
        print(f"{args.script}:{msg}", file=sys.stderr)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
