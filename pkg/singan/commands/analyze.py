import argparse
import logging
import sys
from pathlib import Path

from ..analysis import analyze_map
from ..catalog import analyse_entry, get_entry
from ..config import AnalysisConfig
from ..dsl.parser import parse_mapfile
from ..errors import ConfigError, SinganError
from ..report import build_report, render_report
from ..singularity import Seed

logger = logging.getLogger(__name__)

CONFIG_FLAGS = ("steps", "horizon", "trunc", "seeds", "seed")


def add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--steps", type=int, help="degree iterations N (default 14)")
    parser.add_argument("--horizon", type=int, help="epsilon-orbit length each way (default 20)")
    parser.add_argument("--trunc", type=int, help="initial Laurent truncation (default 8)")
    parser.add_argument("--seeds", type=int, help="number of random x0 seeds (default 3)")
    parser.add_argument("--seed", type=int, help="PRNG seed (default 0)")


def config_from_args(args: argparse.Namespace) -> AnalysisConfig:
    return AnalysisConfig.from_env({name: getattr(args, name, None) for name in CONFIG_FLAGS})


def register(subparsers) -> None:
    parser = subparsers.add_parser("analyze", help="analyse a map from a mapfile or the catalog")
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("file", nargs="?", help="mapfile to analyse")
    source.add_argument("--catalog", metavar="KEY", help="analyse a catalog entry")
    parser.add_argument("--map", dest="map_name", help="map to pick when the file holds several")
    parser.add_argument("--probe", action="append", default=[], help='extra probe seed, e.g. "c, 1/eps@0"')
    parser.add_argument("--tracked", type=int, default=1, choices=(0, 1), help="pair component probes track")
    parser.add_argument("--deauto", metavar="PARAM", help="check a deautonomisation of this parameter")
    parser.add_argument("--json", action="store_true", help="write the report as JSON")
    add_config_flags(parser)
    parser.set_defaults(handler=run)


def _load(path: str, name: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read {path}: {e.strerror}") from e
    maps = parse_mapfile(text)
    if name:
        for m in maps:
            if m.name == name:
                return m
        raise ConfigError(f'{path} has no map named "{name}"')
    if len(maps) > 1:
        raise ConfigError(f"{path} holds {len(maps)} maps; pick one with --map")
    return maps[0]


def run(args: argparse.Namespace) -> int:
    config = config_from_args(args)
    probes = [Seed.parse(text, args.tracked) for text in args.probe]
    if args.catalog:
        entry = get_entry(args.catalog)
        if probes or args.deauto:
            raise SinganError("--probe and --deauto apply to mapfiles; catalog entries carry their own")
        _, analysis = analyse_entry(entry, config)
    else:
        m = _load(args.file, args.map_name)
        analysis = analyze_map(m, config, probes, args.deauto)
    report = build_report(analysis)
    sys.stdout.buffer.write(render_report(report, "json" if args.json else "text"))
    sys.stdout.flush()
    return 0
