"""
Command-line entry point.

Exit codes: 0 success (every verdict counts as success), 1 a catalog
expectation failed, 2 user error (parse errors, bad flags), 3 precision or
budget limits.
"""

import argparse
import logging
import sys
from typing import List, Optional

from . import __version__
from .commands import analyze, catalog
from .errors import ParseError, SinganError

logger = logging.getLogger("singan")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="singan",
        description="Singularity confinement, anticonfinement and algebraic entropy of second-order maps.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logging")
    subparsers = parser.add_subparsers(dest="command", required=True)
    analyze.register(subparsers)
    catalog.register(subparsers)
    return parser


def setup_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("[%(name)s] %(message)s"))
    logger.handlers[:] = [handler]
    logger.setLevel(level)
    logger.propagate = False


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    setup_logging(args.verbose)
    try:
        return args.handler(args)
    except ParseError as e:
        sys.stderr.write(f"parse error: {e.render()}\n")
        return e.exit_code
    except SinganError as e:
        sys.stderr.write(f"error: {e.detail}\n")
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
