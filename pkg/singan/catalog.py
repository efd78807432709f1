"""
Catalog of worked maps with expected results.

Every expectation carries a provenance tag: PAPER (reproduces a published
number or pattern), DERIVED (follows from a direct computation cross-checked
by hand) or TRIVIAL (plumbing). ``run-all`` executes each entry and compares.
"""

import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Dict, List, Optional, Sequence, Tuple

from .analysis import Analysis, analyze_map
from .config import AnalysisConfig
from .dsl.parser import parse_mapfile, parse_rule
from .dsl.printer import format_expr
from .errors import ConfigError, SinganError
from .maps.model import MapInstance
from .maps.params import Explicit
from .maps.symbolic import reduced, to_sympy
from .maps.transform import StateTransform, check_conjugacy, conjugate_map
from .report import build_report
from .schemas import AnalysisReport
from .singularity import Seed, find_singular_values

logger = logging.getLogger(__name__)

PAPER = "PAPER"
DERIVED = "DERIVED"
TRIVIAL = "TRIVIAL"
TAGS = (PAPER, DERIVED, TRIVIAL)

GOLDEN_RATIO = (1 + math.sqrt(5)) / 2
LOG_2 = math.log(2)
LOG_GOLDEN = math.log(GOLDEN_RATIO)
LOG_K3 = math.log((3 + math.sqrt(5)) / 2)
INFINITY_PROBE = "∞ probe"
GENERIC_RANGE = 64
PER_SINGULARITY = (
    "classification",
    "pattern",
    "growth",
    "growth_rate",
    "forward_valuations",
    "backward_valuations",
    "forward_components",
    "backward_components",
)


@dataclass(frozen=True)
class Conjugacy:
    """T(source(s)) == target(T(s)) for T given by ``forward`` with inverse ``inverse``."""

    target: str
    forward: str
    inverse: str
    trials: int = 100


@dataclass(frozen=True)
class Expectation:
    kind: str
    expected: object
    tag: str
    subject: str = ""
    tol: float = 0.0

    def __str__(self) -> str:
        where = f" [{self.subject}]" if self.subject else ""
        return f"{self.kind}{where}"


@dataclass(frozen=True)
class Probe:
    text: str
    tracked: int = 1
    label: str = ""

    def seed(self) -> Seed:
        return Seed.parse(self.text, self.tracked, self.label)


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    description: str
    map_name: str
    expectations: Tuple[Expectation, ...]
    probes: Tuple[Probe, ...] = ()
    overrides: Dict[str, int] = field(default_factory=dict)
    deauto_param: Optional[str] = None
    # pointwise change of variables (phi, psi) applied before the analysis
    normalise: Optional[Tuple[str, str]] = None

    def tags(self) -> List[str]:
        return sorted({e.tag for e in self.expectations})


@dataclass
class ExpectationResult:
    expectation: Expectation
    ok: bool
    observed: str


@dataclass
class EntryResult:
    entry: CatalogEntry
    report: Optional[AnalysisReport]
    results: List[ExpectationResult]
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None and all(r.ok for r in self.results)


def _generic_dp2_param() -> Explicit:
    rng = random.Random("dp2-generic")
    values = [Fraction(rng.randint(101, 997), rng.randint(2, 97)) for _ in range(2 * GENERIC_RANGE + 1)]
    return Explicit(tuple(values), start=-GENERIC_RANGE)


@lru_cache(maxsize=1)
def load_maps() -> Dict[str, MapInstance]:
    """Catalog maps keyed by name, including the derived dp2-generic."""
    text = resources.files("singan").joinpath("data/catalog.map").read_text(encoding="utf-8")
    maps = {m.name: m for m in parse_mapfile(text)}
    maps["dp2-generic"] = maps["dp2-linear"].with_params({"a": _generic_dp2_param()}, name="dp2-generic")
    return maps


def _e(kind, expected, tag, subject="", tol=0.0) -> Expectation:
    return Expectation(kind, expected, tag, subject, tol)


INF = INFINITY_PROBE

ENTRIES: Tuple[CatalogEntry, ...] = (
    CatalogEntry(
        key="eq1",
        description="linear map x_{n+1} + x_{n-1} = 1 + 3 x_n; bounded anticonfined probe at infinity",
        map_name="eq1",
        expectations=(
            _e("singular_values", [], TRIVIAL),
            _e("classification", "anticonfined", PAPER, INF),
            _e("forward_valuations", [-1, -1, -1, -1, -1, -1], PAPER, INF),
            _e("backward_valuations", [-1, -1, -1, -1, -1, -1], PAPER, INF),
            _e("growth", "zero", PAPER, INF),
            _e("entropy", 0.0, PAPER, tol=1e-12),
            _e("verdict", "InconclusiveRecommendFullDeautonomisation", DERIVED),
        ),
    ),
    CatalogEntry(
        key="henon",
        description="Henon-type map x_{n+1} + x_{n-1} = 1 + x_n^2; no enterable singularity, entropy log 2",
        map_name="henon",
        overrides={"steps": 8},
        expectations=(
            _e("singular_values", [], PAPER),
            _e("note", "no enterable singular values; anticonfined probe at infinity", PAPER),
            _e("forward_valuations", [-1, -2, -4, -8, -16, -32], PAPER, INF),
            _e("backward_valuations", [-1, -2, -4, -8, -16, -32], PAPER, INF),
            _e("growth", "exponential", PAPER, INF),
            _e("growth_rate", LOG_2, PAPER, INF, 1e-12),
            _e("degrees_prefix", [0, 1, 2, 4, 8, 16, 32, 64, 128], DERIVED),
            _e("verdict", "NonIntegrable", PAPER),
            _e("bound", LOG_2, PAPER, tol=1e-12),
        ),
    ),
    CatalogEntry(
        key="eq3",
        description="linearisable map (x_{n+1}+x_n)(x_n+x_{n-1}) = a(x_n^2-1) with a = 17/5",
        map_name="eq3",
        expectations=(
            _e("singular_values", ["-1", "1"], PAPER),
            _e("pattern", ["1", "-1"], PAPER, "1"),
            _e("pattern", ["-1", "1"], PAPER, "-1"),
            _e("classification", "anticonfined", PAPER, INF),
            _e("forward_valuations", [-1, -1, -1, -1, -1, -1], PAPER, INF),
            _e("backward_valuations", [-1, -1, -1, -1, -1, -1], PAPER, INF),
            _e("growth", "zero", PAPER, INF),
            _e(
                "conjugacy",
                Conjugacy(
                    "eq3-projective",
                    "((X + Y)/(X + 1), (X + Y)/(X - 1))",
                    "((X + Y)/(Y - X), (2*X*Y - X - Y)/(Y - X))",
                ),
                PAPER,
                "eq3-pair",
            ),
            _e("verdict", "InconclusiveRecommendFullDeautonomisation", DERIVED),
        ),
    ),
    CatalogEntry(
        key="cqii",
        description="x_{n+1} x_{n-1} = x_n^2 - 1; confined, with linearly growing anticonfined probe",
        map_name="cqii",
        expectations=(
            _e("singular_values", ["-1", "1"], DERIVED),
            _e("pattern", ["1", "0", "-1"], PAPER, "1"),
            _e("pattern", ["-1", "0", "1"], PAPER, "-1"),
            _e("forward_valuations", [-1, -2, -3, -4, -5], PAPER, INF),
            _e("backward_valuations", [-1, -2, -3, -4, -5], PAPER, INF),
            _e("growth", "linear", PAPER, INF),
            _e("verdict", "Linearisable", PAPER),
            _e("growth_type", "polynomial", DERIVED),
            _e("polynomial_order", 1, DERIVED),
        ),
    ),
    CatalogEntry(
        key="cqiii",
        description="triangular map on P1 x P1; non-confined at y = 1 and y = -1",
        map_name="cqiii",
        probes=(Probe("c, 1+eps@0", 0, "y=1"), Probe("c, -1+eps@0", 0, "y=-1")),
        expectations=(
            _e("classification", "nonconfined", DERIVED, "y=1"),
            _e("classification", "nonconfined", DERIVED, "y=-1"),
            _e("conjugacy", Conjugacy("cqiv", "(Y, X/Y^2)", "(Y*X^2, X)"), PAPER, "cqiii"),
            _e("verdict", "Linearisable", DERIVED),
        ),
    ),
    CatalogEntry(
        key="cqiv",
        description="the triangular map in the variables (y, z = x/y^2); anticonfined at y = 0",
        map_name="cqiv",
        probes=(Probe("eps, c@0", 1, "y=0"), Probe("1+eps, c@0", 1, "y=1")),
        expectations=(
            _e("classification", "anticonfined", PAPER, "y=0"),
            _e("growth", "zero", DERIVED, "y=0"),
            _e("classification", "nonconfined", DERIVED, "y=1"),
            _e("verdict", "LinearisableOrNonIntegrable", DERIVED),
        ),
    ),
    CatalogEntry(
        key="dqii-k2",
        description="x_{n+1} x_{n-1} = x_n^2; linear growth of the anticonfined pattern",
        map_name="dqii-k2",
        expectations=(
            _e("singular_values", ["0"], DERIVED),
            _e("classification", "anticonfined", PAPER, "0"),
            _e("forward_valuations", [1, 2, 3, 4, 5], PAPER, "0"),
            _e("backward_valuations", [-1, -2, -3, -4, -5], PAPER, "0"),
            _e("growth", "linear", PAPER, "0"),
            _e("verdict", "Linearisable", PAPER),
        ),
    ),
    CatalogEntry(
        key="dqii-k3",
        description="x_{n+1} x_{n-1} = x_n^3; exponential growth with rate log((3+sqrt 5)/2)",
        map_name="dqii-k3",
        overrides={"steps": 9, "max_steps": 9},
        expectations=(
            _e("forward_valuations", [-1, -3, -8, -21], PAPER, INF),
            _e("backward_valuations", [1, 3, 8, 21], PAPER, INF),
            _e("growth", "exponential", PAPER, INF),
            _e("growth_rate", LOG_K3, DERIVED, INF, 1e-6),
            _e("recurrence", "d_{n+1} = 3 d_n - d_{n-1}", PAPER),
            _e("entropy", LOG_K3, DERIVED, tol=1e-6),
            _e("verdict", "NonIntegrable", PAPER),
        ),
    ),
    CatalogEntry(
        key="tanh-k2",
        description="tanh form of x_{n+1} x_{n-1} = x_n^2, normalised by x -> (1-x)/(1+x)",
        map_name="tanh-k2",
        normalise=("(1 - x)/(1 + x)", "(1 - x)/(1 + x)"),
        expectations=(
            _e("source_singular_values", ["-1", "1"], DERIVED),
            _e("conjugate_rule", "x^2/y", PAPER),
            _e("growth", "linear", PAPER, "0"),
            _e("verdict", "Linearisable", PAPER),
        ),
    ),
    CatalogEntry(
        key="tanh-k3",
        description="tanh form of x_{n+1} x_{n-1} = x_n^3, normalised by x -> (1-x)/(1+x)",
        map_name="tanh-k3",
        normalise=("(1 - x)/(1 + x)", "(1 - x)/(1 + x)"),
        overrides={"steps": 9, "max_steps": 9},
        expectations=(
            _e("source_singular_values", ["-1", "1"], DERIVED),
            _e("conjugate_rule", "x^3/y", PAPER),
            _e("growth_rate", LOG_K3, DERIVED, INF, 1e-6),
            _e("entropy", LOG_K3, DERIVED, tol=1e-6),
            _e("verdict", "NonIntegrable", PAPER),
        ),
    ),
    CatalogEntry(
        key="golden",
        description="x_{n+1} x_n = x_{n-1}(x_n^2 - 1); confined but non-integrable",
        map_name="golden",
        expectations=(
            _e("singular_values", ["-1", "0", "1", "∞"], DERIVED),
            _e("pattern", ["1", "0", "∞", "-1"], PAPER, "1"),
            _e("pattern", ["-1", "0", "∞", "1"], PAPER, "-1"),
            _e("classification", "anticonfined", PAPER, "0"),
            _e("forward_valuations", [-1, -1, -2, -3, -5, -8, -13], PAPER, "0"),
            _e("backward_valuations", [1, 1, 2, 3, 5, 8, 13], PAPER, "0"),
            _e("growth_rate", LOG_GOLDEN, PAPER, "0", 1e-6),
            _e("classification", "anticonfined", DERIVED, "∞"),
            _e("degrees_prefix", [0, 1, 2, 4, 8, 14, 24, 40, 66, 108, 176, 286, 464, 752, 1218], PAPER),
            _e("recurrence", "d_{n+1} = 2 d_n - d_{n-2}", PAPER),
            _e("recurrence_from", 4, PAPER),
            _e("dominant_root", GOLDEN_RATIO, PAPER, tol=1e-9),
            _e("entropy", LOG_GOLDEN, PAPER, tol=1e-6),
            _e("verdict", "NonIntegrable", PAPER),
        ),
    ),
    CatalogEntry(
        key="golden-deauto",
        description="deautonomisation with a_{n+3} = a_{n+1}^2 a_n; loglog growth log of the golden ratio",
        map_name="golden-deauto",
        overrides={"steps": 10, "max_steps": 10},
        deauto_param="a",
        expectations=(
            _e("deauto_confined", True, PAPER),
            _e("deauto_pattern", ["a", "0", "∞", "-a"], PAPER, "a"),
            _e("loglog_rate", LOG_GOLDEN, PAPER, tol=1e-9),
            _e("constraint_factors", ["(λ + 1)", "(λ^2 - λ - 1)"], PAPER),
            _e("verdict", "NonIntegrable", DERIVED),
        ),
    ),
    CatalogEntry(
        key="dp2-generic",
        description="discrete Painleve II with generic a_n; the singularities at +1 and -1 do not confine",
        map_name="dp2-generic",
        overrides={"steps": 6, "max_steps": 6},
        expectations=(
            _e("classification", "nonconfined", PAPER, "1"),
            _e("classification", "nonconfined", PAPER, "-1"),
        ),
    ),
    CatalogEntry(
        key="dp2-linear",
        description="discrete Painleve II with a_n = n + 1; confined, quadratic degree growth",
        map_name="dp2-linear",
        deauto_param="a",
        expectations=(
            _e("singular_values", ["-1", "1"], DERIVED),
            _e("pattern", ["1", "∞", "-1"], PAPER, "1"),
            _e("pattern", ["-1", "∞", "1"], PAPER, "-1"),
            _e("deauto_confined", True, PAPER),
            _e("growth_type", "polynomial", PAPER),
            _e("polynomial_order", 2, PAPER),
            _e("note", "the probe at infinity is not anticonfined", DERIVED),
            _e("verdict", "IntegrableCandidate", DERIVED),
        ),
    ),
    CatalogEntry(
        key="dp2-late",
        description="discrete Painleve II with late confinement; entropy log 1.8832",
        map_name="dp2-late",
        overrides={"steps": 12, "max_steps": 12},
        deauto_param="a",
        expectations=(
            _e("classification", "confined", PAPER, "1"),
            _e("classification", "confined", PAPER, "-1"),
            _e("pattern", ["1", "∞", "-1", "∞", "1"], DERIVED, "1"),
            _e("pattern", ["-1", "∞", "1", "∞", "-1"], DERIVED, "-1"),
            _e("constraint_root", 1.8832, PAPER, tol=5e-4),
            _e("degree_ratio", 1.8832, DERIVED, tol=0.1),
            _e("verdict", "NonIntegrable", DERIVED),
        ),
    ),
    CatalogEntry(
        key="antimac",
        description="discrete Painleve II in the variables (x, z = y/x^2); bounded anticonfined pattern at x = 0",
        map_name="antimac",
        probes=(Probe("eps, c@0", 1, "x=0"),),
        expectations=(
            _e("classification", "anticonfined", PAPER, "x=0"),
            _e("forward_components", [[2, -3], [1, -1], [1, -1]], PAPER, "x=0"),
            _e("backward_components", [[1, -1], [1, -1]], PAPER, "x=0"),
            _e("growth", "zero", PAPER, "x=0"),
            _e("conjugacy", Conjugacy("antimac", "(X, Y/X^2)", "(X, Y*X^2)"), PAPER, "dp2-pair"),
            _e("verdict", "InconclusiveRecommendFullDeautonomisation", DERIVED),
        ),
    ),
)


def get_entry(key: str) -> CatalogEntry:
    for entry in ENTRIES:
        if entry.key == key:
            return entry
    raise ConfigError(f"unknown catalog key {key!r}")


def _transform(forward: str, inverse: str) -> StateTransform:
    return StateTransform(forward=parse_rule(forward), inverse=parse_rule(inverse))


def entry_map(entry: CatalogEntry) -> MapInstance:
    """The map the entry analyses, after its normalising change of variables if it has one."""
    m = load_maps()[entry.map_name]
    if entry.normalise is None:
        return m
    phi, psi = (parse_rule(text)[0] for text in entry.normalise)
    return conjugate_map(m, StateTransform.from_pointwise(phi, psi), name=f"{entry.key}/normalised")


def _same_rule(observed: MapInstance, expected: str) -> bool:
    difference = to_sympy(observed.forward[0]) - to_sympy(parse_rule(expected)[0])
    return reduced(difference) == 0


def _close(observed: Optional[str], expected: float, tol: float) -> bool:
    return observed is not None and abs(float(observed) - expected) <= tol


def check_expectation(entry: CatalogEntry, e: Expectation, m: MapInstance, r: AnalysisReport) -> ExpectationResult:
    """Compare one expectation with the report; never raises for a plain mismatch."""
    kind, want = e.kind, e.expected
    if kind == "singular_values":
        got = r.singular_values
        ok = got == want
    elif kind == "source_singular_values":
        got = [v.label for v in find_singular_values(load_maps()[entry.map_name])]
        ok = got == want
    elif kind in PER_SINGULARITY:
        item = r.find(e.subject)
        if item is None:
            return ExpectationResult(e, False, f"no report for {e.subject}")
        if kind == "classification":
            got = item.classification
            ok = got == want
        elif kind == "pattern":
            got = item.pattern
            ok = item.classification == "confined" and got == want
        elif kind == "growth":
            got = item.growth.type if item.growth else None
            ok = got == want
        elif kind == "growth_rate":
            got = item.growth.rate if item.growth else None
            ok = _close(got, want, e.tol)
        else:
            got = getattr(item, kind)[: len(want)]
            ok = got == want
    elif kind == "degrees_prefix":
        got = r.degrees[: len(want)]
        ok = got == want
    elif kind == "recurrence":
        got = r.recurrence.text if r.recurrence else None
        ok = got == want
    elif kind == "recurrence_from":
        got = r.recurrence.valid_from if r.recurrence else None
        ok = got == want
    elif kind == "growth_type":
        got = r.growth_type
        ok = got == want
    elif kind == "polynomial_order":
        got = r.polynomial_order
        ok = got == want
    elif kind == "entropy":
        got = r.entropy
        ok = _close(got, want, e.tol)
    elif kind == "dominant_root":
        got = r.dominant_root.decimal if r.dominant_root else None
        ok = _close(got, want, e.tol)
    elif kind == "verdict":
        got = r.verdict.kind
        ok = got == want
    elif kind == "bound":
        got = r.verdict.bound
        ok = _close(got, want, e.tol)
    elif kind == "note":
        got = r.notes
        ok = want in got
    elif kind == "conjugacy":
        maps = load_maps()
        T = _transform(want.forward, want.inverse)
        result = check_conjugacy(maps[e.subject], T, maps[want.target], trials=want.trials)
        got = f"{result.trials} states checked" if result else f"fails at {result.counterexample}"
        ok = bool(result)
    elif kind == "conjugate_rule":
        got = format_expr(m.forward[0])
        ok = _same_rule(m, want)
    elif kind in ("deauto_confined", "deauto_pattern", "loglog_rate", "constraint_root", "constraint_factors"):
        d = r.deauto
        if d is None:
            return ExpectationResult(e, False, "no deautonomisation report")
        if kind == "deauto_confined":
            got = d.confinement_verified
            ok = got == want
        elif kind == "deauto_pattern":
            check = next((c for c in d.checks if c.value == e.subject), None)
            got = check.pattern if check else None
            ok = check is not None and check.classification == "confined" and got == want
        elif kind == "loglog_rate":
            got = d.loglog_rate
            ok = _close(got, want, e.tol)
        elif kind == "constraint_root":
            got = d.dominant_root.decimal if d.dominant_root else None
            ok = _close(got, want, e.tol)
        else:
            got = sorted(d.factors)
            ok = set(got) == set(want)
    elif kind == "degree_ratio":
        d = r.degrees
        got = d[-1] / d[-2] if len(d) > 1 and d[-2] else None
        ok = got is not None and abs(got - want) <= e.tol * want
    else:
        raise ValueError(f"unknown expectation kind {kind!r}")
    return ExpectationResult(e, ok, str(got))


def analyse_entry(entry: CatalogEntry, config: Optional[AnalysisConfig] = None) -> Tuple[MapInstance, Analysis]:
    config = config or AnalysisConfig()
    if entry.overrides:
        config = config.model_copy(update=entry.overrides)
    m = entry_map(entry)
    probes = [p.seed() for p in entry.probes]
    return m, analyze_map(m, config, probes, entry.deauto_param)


def run_entry(entry: CatalogEntry, config: Optional[AnalysisConfig] = None, tags: Sequence[str] = TAGS) -> EntryResult:
    """Analyse one entry and check the expectations whose tag is in ``tags``."""
    wanted = [e for e in entry.expectations if e.tag in tags]
    logger.info("catalog %s: %d expectation(s)", entry.key, len(wanted))
    try:
        m, analysis = analyse_entry(entry, config)
    except SinganError as exc:
        logger.warning("catalog %s failed: %s", entry.key, exc.detail)
        return EntryResult(entry, None, [], exc.detail)
    report = build_report(analysis)
    results = [check_expectation(entry, e, m, report) for e in wanted]
    return EntryResult(entry, report, results)
