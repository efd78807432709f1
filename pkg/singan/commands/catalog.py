import argparse
import logging
import sys

from ..catalog import ENTRIES, TAGS, entry_map, get_entry, run_entry
from ..dsl.printer import format_map
from ..errors import ConfigError
from .analyze import add_config_flags, config_from_args

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("catalog", help="list, show or check the catalog of worked maps")
    actions = parser.add_subparsers(dest="action", required=True)

    listing = actions.add_parser("list", help="catalog keys with one-line descriptions")
    listing.set_defaults(handler=list_entries)

    show = actions.add_parser("show", help="print an entry as a mapfile block")
    show.add_argument("key")
    show.set_defaults(handler=show_entry)

    run_all = actions.add_parser("run-all", help="run every entry and compare with the expected results")
    run_all.add_argument("--only", metavar="tag=TAG", help="check only expectations with this provenance tag")
    add_config_flags(run_all)
    run_all.set_defaults(handler=run_entries)


def _out(line: str = "") -> None:
    sys.stdout.write(line + "\n")


def list_entries(args: argparse.Namespace) -> int:
    width = max(len(e.key) for e in ENTRIES)
    for entry in sorted(ENTRIES, key=lambda e: e.key):
        _out(f"{entry.key:<{width}}  {entry.description}")
    return 0


def show_entry(args: argparse.Namespace) -> int:
    _out(format_map(entry_map(get_entry(args.key))).rstrip("\n"))
    return 0


def parse_only(value: str):
    if value is None:
        return TAGS
    field, _, tag = value.partition("=")
    if field != "tag" or tag not in TAGS:
        raise ConfigError(f"--only expects tag=PAPER, tag=DERIVED or tag=TRIVIAL, not {value!r}")
    return (tag,)


def run_entries(args: argparse.Namespace) -> int:
    tags = parse_only(args.only)
    config = config_from_args(args)
    passed = failed = 0
    for entry in sorted(ENTRIES, key=lambda e: e.key):
        result = run_entry(entry, config, tags)
        if result.error is not None:
            _out(f"FAIL {entry.key}: {result.error}")
            failed += 1
            continue
        for r in result.results:
            status = "PASS" if r.ok else "FAIL"
            _out(f"{status} [{r.expectation.tag}] {entry.key}: {r.expectation} (observed {r.observed})")
            if r.ok:
                passed += 1
            else:
                failed += 1
    _out(f"{passed} passed, {failed} failed")
    return 1 if failed else 0
