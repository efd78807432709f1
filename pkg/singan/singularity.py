"""
The epsilon engine.

A singularity is entered by seeding the orbit with (c, v + eps) where ``c``
tracks the free initial value and ``eps`` is infinitesimal, then iterating
exact Laurent values forward and backward. Each orbit entry is read off as
regular, vanishing, diverging, or near a singular value, and the shape of
the whole orbit decides between confined, anticonfined and non-confined.

Entries close to the seed are computed with ``c`` symbolic over Q(c); the
long tails are computed twice with ``c`` specialised to two generic
rationals, an entry depending on ``c`` exactly when the two runs disagree.
"""

import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Dict, List, Optional, Sequence, Tuple, Union

import sympy
from sympy import Dummy, Poly, cancel, diff, expand, factor_list, fraction, oo

from .config import AnalysisConfig
from .core import QQ, TRACKER, TRACKER_FIELD, LaurentValue, depends_on_tracker, format_element, to_fraction
from .dsl.ast import Ast, BinOp, Num, Param
from .dsl.parser import parse_probe
from .dsl.printer import format_expr
from .errors import (
    HoldoutMismatch,
    NotAnticonfined,
    PrecisionExhausted,
    SemanticError,
    TruncationCapExceeded,
    UnsupportedSingularity,
    UnsupportedSpectrum,
)
from .growth import EntropyEstimate, Recurrence, RootInterval, char_poly, dominant_root, fit_recurrence
from .maps.evaluate import evaluate
from .maps.model import BACKWARD, FORWARD, SCALAR, MapInstance, step
from .maps.symbolic import from_sympy, reduced, substitute_params, symbol, to_sympy

logger = logging.getLogger(__name__)

TRACKED = "f(c)"


# pattern entries


@dataclass(frozen=True)
class Regular:
    value: str
    depends_on_tracker: bool

    valuation = 0


@dataclass(frozen=True)
class Vanishing:
    valuation: int


@dataclass(frozen=True)
class Diverging:
    valuation: int


@dataclass(frozen=True)
class NearValue:
    """Value base + O(eps^valuation), where base is the singular value ``expr`` at that index."""

    base: Fraction
    valuation: int
    expr: str = ""


PatternEntry = Union[Regular, Vanishing, Diverging, NearValue]


def is_regular(entry: PatternEntry) -> bool:
    return isinstance(entry, Regular)


def entry_symbol(entry: PatternEntry) -> str:
    """Pattern notation: the singular value approached, 0 or ∞, or the regular value."""
    if isinstance(entry, Regular):
        return entry.value
    if isinstance(entry, Vanishing):
        return "0"
    if isinstance(entry, Diverging):
        return "∞"
    return entry.expr or _fraction_text(entry.base)


def entry_eps(entry: PatternEntry) -> str:
    """The entry as a power of eps, or its value when regular."""
    if isinstance(entry, Regular):
        return entry.value
    if isinstance(entry, NearValue):
        power = "ε" if entry.valuation == 1 else f"ε^{{{entry.valuation}}}"
        return f"{_fraction_text(entry.base)}+{power}"
    return "ε" if entry.valuation == 1 else f"ε^{{{entry.valuation}}}"


def _fraction_text(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


# singular values


@dataclass(frozen=True)
class SingularValue:
    """A finite singular value as an expression in the map parameters, or ∞."""

    expr: sympy.Expr

    @property
    def is_infinite(self) -> bool:
        return self.expr == oo

    @property
    def label(self) -> str:
        return "∞" if self.is_infinite else str(self.expr).replace("**", "^")

    def at(self, m: MapInstance, n: int) -> Optional[Fraction]:
        if self.is_infinite:
            return None
        value = substitute_params(self.expr, m.params_at(n))
        if value.free_symbols:
            raise UnsupportedSingularity(f"singular value {self.label} does not evaluate to a rational")
        return Fraction(int(value.p), int(value.q))

    def seed(self, index: int = 1) -> "Seed":
        eps = Param("eps")
        if self.is_infinite:
            second = BinOp("/", Num(Fraction(1)), eps)
        elif self.expr == 0:
            second = eps
        else:
            second = BinOp("+", from_sympy(self.expr), eps)
        return Seed((Param("c"), second), index, label=self.label)


def _sort_key(value: SingularValue):
    if value.is_infinite:
        return (2, 0.0, "")
    if value.expr.is_number:
        return (0, float(value.expr), "")
    return (1, 0.0, str(value.expr))


def _finite_at_infinity(rule: sympy.Expr, x: sympy.Symbol, other: sympy.Symbol) -> bool:
    """True when the rule has a finite limit at x = ∞ that does not involve ``other``."""
    s = Dummy("s")
    num, den = fraction(reduced(rule.subs(x, 1 / s)))
    den0 = expand(den.subs(s, 0))
    if den0 == 0:
        return False
    limit = cancel(num.subs(s, 0) / den0)
    return other not in limit.free_symbols


def find_singular_values(m: MapInstance) -> List[SingularValue]:
    """
    Values of x_n at which x_{n+1} no longer depends on x_{n-1}.

    Finite values are the rational roots, in x, of the gcd of the
    y-coefficients of N_y D - N D_y for the rule N/D; they may depend on the
    map parameters. ∞ is included when the forward or the backward rule has
    a finite limit at x = ∞ that is independent of the other variable.
    """
    if m.arity != SCALAR:
        raise ValueError(f"singular values are searched for scalar maps only; {m.name} is a pair map")
    x, y = symbol("x"), symbol("y")
    num, den = fraction(reduced(to_sympy(m.forward[0])))
    condition = expand(diff(num, y) * den - num * diff(den, y))
    values: List[SingularValue] = []
    if condition != 0:
        coefficients = Poly(condition, y).all_coeffs()
        g = reduce(sympy.gcd, coefficients)
        if g.has(x):
            _, factors = factor_list(g)
            for factor, _ in factors:
                if not factor.has(x):
                    continue
                p = Poly(factor, x)
                if p.degree() != 1:
                    raise UnsupportedSingularity(
                        f"{m.name}: singular values are the roots of {factor}, which are not rational"
                    )
                a1, a0 = p.all_coeffs()
                values.append(SingularValue(cancel(-a0 / a1)))
    rules = (to_sympy(m.forward[0]), to_sympy(m.backward[0]))
    if any(_finite_at_infinity(rule, x, y) for rule in rules):
        values.append(SingularValue(oo))
    values = sorted(set(values), key=_sort_key)
    logger.info("%s: singular values %s", m.name, [v.label for v in values])
    return values


# seeds and orbits


@dataclass(frozen=True)
class Seed:
    """
    Initial state written over ``c``, ``eps`` and the map parameters.

    Scalar seeds are (x_{n-1}, x_n) with n = ``index``; pair seeds are the
    state at ``index``. ``tracked`` picks the pair component confinement is
    read on.
    """

    components: Tuple[Ast, Ast]
    index: int = 1
    tracked: int = 1
    label: str = ""

    @classmethod
    def parse(cls, text: str, tracked: int = 1, label: str = "") -> "Seed":
        components, index = parse_probe(text)
        return cls(components, index, tracked, label or text.strip())

    def __str__(self) -> str:
        return f"({format_expr(self.components[0])}, {format_expr(self.components[1])})@{self.index}"


def _as_laurent(value, K, T: int) -> LaurentValue:
    if isinstance(value, LaurentValue):
        return value
    if value == 0:
        raise ArithmeticError("an orbit entry is exactly zero; seed it with eps instead")
    return LaurentValue.constant(value, K, T)


@dataclass(frozen=True)
class EpsilonOrbit:
    """Orbit values by index; every value is a tuple of components (one for scalar maps)."""

    values: Dict[int, Tuple[LaurentValue, ...]]
    truncation: int
    escaped_forward: bool = False
    escaped_backward: bool = False

    @property
    def lo(self) -> int:
        return min(self.values)

    @property
    def hi(self) -> int:
        return max(self.values)

    def valuations(self, component: int = 0) -> Dict[int, int]:
        return {n: v[component].valuation for n, v in sorted(self.values.items())}


def _escaped(values: Tuple[LaurentValue, ...], cap: Optional[int]) -> bool:
    return cap is not None and any(abs(v.valuation) > cap for v in values)


def _orbit_once(m, seed: Seed, steps_fwd, steps_bwd, T, K, tracker, cap) -> EpsilonOrbit:
    env: Dict[str, object] = dict(m.params_at(seed.index))
    if "c" in m.params or "eps" in m.params:
        raise SemanticError(f"map {m.name!r} declares a parameter named c or eps, which seeds reserve")
    env["c"] = LaurentValue.constant(tracker, K, T)
    env["eps"] = LaurentValue.monomial(1, K, T)
    start = tuple(_as_laurent(evaluate(node, {}, env), K, T) for node in seed.components)
    n0, scalar = seed.index, m.arity == SCALAR
    values: Dict[int, Tuple[LaurentValue, ...]] = {}
    if scalar:
        values[n0 - 1], values[n0] = (start[0],), (start[1],)
    else:
        values[n0] = start
    escaped = [False, False]
    for direction, steps, slot in ((FORWARD, steps_fwd, 0), (BACKWARD, steps_bwd, 1)):
        state, n = start, n0
        for _ in range(steps):
            try:
                state = step(m, state, n, direction)
            except PrecisionExhausted as exc:
                exc.step = n
                raise
            state = tuple(_as_laurent(v, K, T) for v in state)
            n += 1 if direction == FORWARD else -1
            if scalar:
                index, new = (n, (state[1],)) if direction == FORWARD else (n - 1, (state[0],))
            else:
                index, new = n, state
            values[index] = new
            if _escaped(new, cap):
                escaped[slot] = True
                break
    return EpsilonOrbit(values, T, escaped[0], escaped[1])


def with_restarts(work, truncation: int, max_trunc: int):
    """Run ``work(T)``, doubling T after every PrecisionExhausted up to ``max_trunc``."""
    T = truncation
    while True:
        try:
            return work(T)
        except PrecisionExhausted as exc:
            if T >= max_trunc:
                raise TruncationCapExceeded(getattr(exc, "step", None), T) from exc
            T = min(max(2 * T, 1), max_trunc)
            step_index = getattr(exc, "step", "?")
            logger.info("precision exhausted near step %s; restarting the orbit at truncation %d", step_index, T)


def epsilon_orbit(
    m: MapInstance,
    seed: Seed,
    steps_fwd: int,
    steps_bwd: int,
    truncation: int = 8,
    max_trunc: int = 64,
    domain=TRACKER_FIELD,
    tracker=None,
    max_valuation: Optional[int] = None,
) -> EpsilonOrbit:
    """
    Iterate the seed ``steps_fwd`` steps forward and ``steps_bwd`` backward.

    By default ``c`` stays symbolic in Q(c). Passing ``domain=QQ`` with a
    rational ``tracker`` specialises it. A direction stops early once a
    valuation magnitude exceeds ``max_valuation``.
    """
    if tracker is None:
        tracker = domain.from_sympy(TRACKER) if domain is TRACKER_FIELD else Fraction(1)
    return with_restarts(
        lambda T: _orbit_once(m, seed, steps_fwd, steps_bwd, T, domain, tracker, max_valuation), truncation, max_trunc
    )


# reading entries off an orbit


def classify_value(v: LaurentValue, singular_at: Sequence[Tuple[Fraction, str]] = ()) -> PatternEntry:
    K = v.domain
    if v.valuation < 0:
        return Diverging(v.valuation)
    if v.valuation > 0:
        return Vanishing(v.valuation)
    if depends_on_tracker(K, v.leading):
        return Regular(format_element(K, v.leading).replace("**", "^"), True)
    lead = to_fraction(K, v.leading)
    for base, label in singular_at:
        if base == lead:
            return NearValue(lead, (v - lead).valuation, label)
    return Regular(_fraction_text(lead), False)


def _entries(
    m: MapInstance, orbit: EpsilonOrbit, singular: Sequence[SingularValue]
) -> Dict[int, Tuple[PatternEntry, ...]]:
    finite = [sv for sv in singular if not sv.is_infinite]
    out = {}
    for n, values in sorted(orbit.values.items()):
        singular_at = [(sv.at(m, n), sv.label) for sv in finite]
        out[n] = tuple(classify_value(v, singular_at) for v in values)
    return out


class _NotGeneric(Exception):
    pass


def _merge_entry(a: PatternEntry, b: PatternEntry) -> PatternEntry:
    if isinstance(a, Regular) and isinstance(b, Regular):
        return a if a.value == b.value else Regular(TRACKED, True)
    if a == b:
        return a
    finite = (Regular, NearValue)
    if isinstance(a, finite) and isinstance(b, finite):
        return Regular(TRACKED, True)
    raise _NotGeneric(f"{a} vs {b}")


def _tracker_pairs(seed: int):
    rng = random.Random(f"tracker-{seed}")
    while True:
        first = Fraction(rng.randint(101, 997), rng.randint(2, 97))
        second = Fraction(rng.randint(101, 997), rng.randint(2, 97))
        if first != second and first.denominator > 1 and second.denominator > 1:
            yield first, second


@dataclass
class _Run:
    entries: Dict[int, Tuple[PatternEntry, ...]]
    escaped_forward: bool
    escaped_backward: bool
    truncation: int
    warnings: List[str] = field(default_factory=list)


def exact_reach(entries: Dict[int, Tuple[PatternEntry, ...]], n0: int, covered: Sequence[int]) -> Tuple[int, int]:
    """
    Steps forward and backward an exact run must take so that every constant
    entry following a singular one is read over Q(c) rather than inferred
    from two specialisations agreeing.
    """
    covered = set(covered)
    fwd = bwd = 0
    for n, current in entries.items():
        if n in covered or n == n0:
            continue
        inner = entries.get(n - 1 if n > n0 else n + 1)
        if inner is None:
            continue
        if any(_constant(a) and not is_regular(b) for a, b in zip(current, inner)):
            if n > n0:
                fwd = max(fwd, n - n0)
            else:
                bwd = max(bwd, n0 - n)
    return fwd, bwd


def _constant(entry: PatternEntry) -> bool:
    return isinstance(entry, Regular) and not entry.depends_on_tracker


def _run(m: MapInstance, seed: Seed, horizon: int, singular, config: AnalysisConfig) -> _Run:
    exact_steps = min(config.exact_steps, horizon)
    warnings: List[str] = []

    def exact(T, fwd=exact_steps, bwd=exact_steps):
        tracker = TRACKER_FIELD.from_sympy(TRACKER)
        cap = config.max_valuation if max(fwd, bwd) > exact_steps else None
        orbit = _orbit_once(m, seed, fwd, bwd, T, TRACKER_FIELD, tracker, cap)
        return orbit, _entries(m, orbit, singular)

    exact_orbit, exact_entries = with_restarts(exact, config.trunc, config.max_trunc)
    if exact_steps >= horizon:
        return _Run(exact_entries, False, False, exact_orbit.truncation)

    merged: Optional[Dict[int, Tuple[PatternEntry, ...]]] = None
    for attempt, (c1, c2) in zip(range(3), _tracker_pairs(config.seed)):

        def specialised(T, c=c1):
            orbit = _orbit_once(m, seed, horizon, horizon, T, QQ, c, config.max_valuation)
            return orbit, _entries(m, orbit, singular)

        (orbit_a, entries_a) = with_restarts(specialised, config.trunc, config.max_trunc)
        (orbit_b, entries_b) = with_restarts(lambda T: specialised(T, c2), config.trunc, config.max_trunc)
        common = sorted(set(entries_a) & set(entries_b))
        try:
            merged = {n: tuple(_merge_entry(a, b) for a, b in zip(entries_a[n], entries_b[n])) for n in common}
            break
        except _NotGeneric as exc:
            logger.info("tracker values %s, %s are not generic for %s (%s)", c1, c2, m.name, exc)
    if merged is None:
        warnings.append(f"{m.name}: no generic tracker specialisation found; using the first run")
        logger.warning(warnings[-1])
        merged = entries_a
    fwd, bwd = exact_reach(merged, seed.index, list(exact_entries))
    if max(fwd, bwd) > exact_steps:
        fwd, bwd = min(max(fwd, exact_steps), horizon), min(max(bwd, exact_steps), horizon)
        logger.info("%s: reading constant recoveries exactly (%d steps forward, %d backward)", m.name, fwd, bwd)
        exact_orbit, exact_entries = with_restarts(lambda T: exact(T, fwd, bwd), config.trunc, config.max_trunc)
    for n, exact_entry in exact_entries.items():
        if n in merged and tuple(map(_shape, merged[n])) != tuple(map(_shape, exact_entry)):
            warnings.append(f"{m.name}: exact and specialised orbits disagree at index {n}")
            logger.warning(warnings[-1])
        merged[n] = exact_entry
    truncation = max(exact_orbit.truncation, orbit_a.truncation, orbit_b.truncation)
    return _Run(merged, orbit_a.escaped_forward, orbit_a.escaped_backward, truncation, warnings)


def _shape(entry: PatternEntry):
    return (type(entry).__name__, entry.valuation)


# growth of anticonfined valuations


@dataclass(frozen=True)
class GrowthClass:
    kind: str  # zero | linear | exponential | unclassified
    slope: Optional[Fraction] = None
    rate: Optional[float] = None
    recurrence: Optional[Recurrence] = None
    root: Optional[RootInterval] = None


def growth_class(valuations: Sequence[int], holdout: int = 2, tol: Fraction = Fraction(1, 10**12)) -> GrowthClass:
    """Zero, linear or exponential growth of a one-sided valuation sequence."""
    values = list(valuations)
    if len(values) < 8:
        return GrowthClass("unclassified")
    magnitudes = [abs(v) for v in values]
    half = len(values) // 2
    if max(magnitudes) == max(magnitudes[:half]):
        return GrowthClass("zero")
    tail = values[half:]
    first = [b - a for a, b in zip(tail, tail[1:])]
    if all(d == first[0] for d in first) and first[0] != 0:
        return GrowthClass("linear", slope=Fraction(first[0]))
    try:
        recurrence = fit_recurrence(magnitudes, holdout)
    except HoldoutMismatch:
        recurrence = None
    if recurrence is None:
        return GrowthClass("unclassified")
    try:
        root = dominant_root(char_poly(recurrence), tol)
    except UnsupportedSpectrum as exc:
        logger.info("valuation growth unclassified: %s", exc.detail)
        return GrowthClass("unclassified", recurrence=recurrence)
    if root.is_one:
        return GrowthClass("unclassified", recurrence=recurrence, root=root)
    return GrowthClass("exponential", rate=math.log(root.value), recurrence=recurrence, root=root)


_GROWTH_ORDER = {"unclassified": 0, "zero": 1, "linear": 2, "exponential": 3}


def _combine_growth(forward: GrowthClass, backward: GrowthClass) -> GrowthClass:
    if forward.kind == backward.kind == "exponential":
        return forward if forward.rate >= backward.rate else backward
    if "unclassified" in (forward.kind, backward.kind) and "exponential" not in (forward.kind, backward.kind):
        return forward if forward.kind == "unclassified" else backward
    return max((forward, backward), key=lambda g: _GROWTH_ORDER[g.kind])


# classification


CONFINED = "confined"
NONCONFINED = "nonconfined"
ANTICONFINED = "anticonfined"


@dataclass(frozen=True)
class SingularityReport:
    entry: str
    seed: Seed
    classification: str
    pattern: Tuple[PatternEntry, ...] = ()
    horizon: int = 0
    forward_valuations: Tuple[int, ...] = ()
    backward_valuations: Tuple[int, ...] = ()
    forward_components: Tuple[Tuple[int, ...], ...] = ()
    backward_components: Tuple[Tuple[int, ...], ...] = ()
    regular_window: Tuple[Tuple[PatternEntry, ...], ...] = ()
    growth: Optional[GrowthClass] = None
    truncation: int = 0
    source: str = "singular-value"
    warnings: Tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return len(self.pattern)


def _tracked(m: MapInstance, seed: Seed) -> int:
    return 0 if m.arity == SCALAR else seed.tracked


def _confined(entries, seed: Seed, tracked: int, escaped: bool) -> Optional[Tuple[PatternEntry, ...]]:
    """The pattern between the entry and the recovery, if the tracked component recovers for good."""
    if escaped:
        return None
    e, hi = seed.index, max(entries)
    if not is_regular(entries[hi][tracked]):
        return None
    suffix = hi
    while suffix - 1 > e and is_regular(entries[suffix - 1][tracked]):
        suffix -= 1
    for j in range(max(suffix, e + 1), hi):
        if entries[j][tracked].depends_on_tracker:
            return tuple(entries[n][tracked] for n in range(e, j))
    return None


def _side_valuation(entry: Tuple[PatternEntry, ...], tracked: int) -> int:
    return entry[tracked].valuation if not is_regular(entry[tracked]) else 0


def _anticonfined(
    m, entries, seed: Seed, tracked: int, run: _Run, config: AnalysisConfig, horizon: int, label: str, source: str
):
    singular = {n: all(not is_regular(c) for c in comps) for n, comps in entries.items()}
    window = [n for n in sorted(entries) if not singular[n]]
    if not window:
        return None
    ws, we = window[0], window[-1]
    lo, hi = min(entries), max(entries)
    forward = list(range(we + 1, hi + 1))
    backward = list(range(ws - 1, lo - 1, -1))
    for side, escaped in ((forward, run.escaped_forward), (backward, run.escaped_backward)):
        if len(side) < config.tail and not (escaped and len(side) >= 3):
            return None
    fwd_vals = tuple(_side_valuation(entries[n], tracked) for n in forward)
    bwd_vals = tuple(_side_valuation(entries[n], tracked) for n in backward)
    fwd_comp = tuple(tuple(c.valuation for c in entries[n]) for n in forward)
    bwd_comp = tuple(tuple(c.valuation for c in entries[n]) for n in backward)

    def magnitudes(components):
        return [max(abs(v) for v in comps) for comps in components]

    fwd_growth = growth_class(_signed(fwd_vals, magnitudes(fwd_comp)), config.holdout, config.root_tol)
    bwd_growth = growth_class(_signed(bwd_vals, magnitudes(bwd_comp)), config.holdout, config.root_tol)
    growth = _combine_growth(fwd_growth, bwd_growth)
    regular_window = tuple(entries[n] for n in range(ws, we + 1))
    warnings = list(run.warnings)
    if not any(c.depends_on_tracker for comps in regular_window for c in comps if is_regular(c)):
        warnings.append(f"{m.name}: regular window of the {label} orbit carries no c-dependent value")
    return SingularityReport(
        entry=label,
        seed=seed,
        classification=ANTICONFINED,
        horizon=horizon,
        forward_valuations=fwd_vals,
        backward_valuations=bwd_vals,
        forward_components=fwd_comp if m.arity != SCALAR else (),
        backward_components=bwd_comp if m.arity != SCALAR else (),
        regular_window=regular_window,
        growth=growth,
        truncation=run.truncation,
        source=source,
        warnings=tuple(warnings),
    )


def _signed(tracked_vals: Sequence[int], magnitudes: Sequence[int]) -> List[int]:
    """Tracked valuations when they carry the growth, otherwise the component magnitudes."""
    if [abs(v) for v in tracked_vals] == list(magnitudes):
        return list(tracked_vals)
    return list(magnitudes)


def _analyse(m, seed, horizon, singular, config, label, source) -> Optional[SingularityReport]:
    run = _run(m, seed, horizon, singular, config)
    tracked = _tracked(m, seed)
    pattern = _confined(run.entries, seed, tracked, run.escaped_forward)
    if pattern is not None:
        return SingularityReport(
            entry=label,
            seed=seed,
            classification=CONFINED,
            pattern=pattern,
            horizon=horizon,
            truncation=run.truncation,
            source=source,
            warnings=tuple(run.warnings),
        )
    return _anticonfined(m, run.entries, seed, tracked, run, config, horizon, label, source)


def classify_seed(
    m: MapInstance,
    seed: Seed,
    config: Optional[AnalysisConfig] = None,
    singular: Optional[Sequence[SingularValue]] = None,
    source: str = "probe",
) -> SingularityReport:
    """Confined, anticonfined or (after re-verification at twice the horizon) non-confined."""
    config = config or AnalysisConfig()
    if singular is None:
        singular = find_singular_values(m) if m.arity == SCALAR else []
    label = seed.label or str(seed)
    report = _analyse(m, seed, config.horizon, singular, config, label, source)
    if report is not None:
        return report
    logger.info(
        "%s: %s neither confines nor anticonfines within %d steps; re-verifying at %d",
        m.name,
        label,
        config.horizon,
        2 * config.horizon,
    )
    report = _analyse(m, seed, 2 * config.horizon, singular, config, label, source)
    if report is not None:
        return report
    return SingularityReport(
        entry=label, seed=seed, classification=NONCONFINED, horizon=2 * config.horizon, source=source
    )


def classify_singularity(
    m: MapInstance,
    v: SingularValue,
    config: Optional[AnalysisConfig] = None,
    singular: Optional[Sequence[SingularValue]] = None,
) -> SingularityReport:
    """Enter the singular value ``v`` with the seed (c, v + eps) at index 1 and classify the outcome."""
    if singular is None:
        singular = find_singular_values(m)
    return classify_seed(m, v.seed(), config, singular, source="singular-value")


def probe_anticonfined(
    m: MapInstance,
    seed: Seed,
    config: Optional[AnalysisConfig] = None,
    singular: Optional[Sequence[SingularValue]] = None,
) -> SingularityReport:
    """Anticonfined report for ``seed``; NotAnticonfined when the orbit is not singular both ways."""
    config = config or AnalysisConfig()
    if singular is None:
        singular = find_singular_values(m) if m.arity == SCALAR else []
    report = _analyse(m, seed, config.horizon, singular, config, seed.label or str(seed), "probe")
    if report is None or report.classification != ANTICONFINED:
        raise NotAnticonfined(f"{m.name}: the orbit from {seed} is not singular in both directions")
    return report


def infinity_probe() -> Seed:
    return Seed.parse("c, 1/eps", label="∞ probe")


# verdict


NON_INTEGRABLE = "NonIntegrable"
LINEARISABLE = "Linearisable"
RECOMMEND_DEAUTONOMISATION = "InconclusiveRecommendFullDeautonomisation"
LINEARISABLE_OR_NON_INTEGRABLE = "LinearisableOrNonIntegrable"
INTEGRABLE_CANDIDATE = "IntegrableCandidate"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Verdict:
    kind: str
    reason: str
    bound: Optional[float] = None
    root: Optional[RootInterval] = None
    warnings: Tuple[str, ...] = ()


def verdict(reports: Sequence[SingularityReport], degree_entropy: Optional[EntropyEstimate] = None) -> Verdict:
    """Combine singularity reports with the degree-based entropy into one integrability verdict."""
    anti = [r for r in reports if r.classification == ANTICONFINED]
    nonconfined = any(r.classification == NONCONFINED for r in reports)
    kinds = {r.growth.kind for r in anti}
    exponential = [r for r in anti if r.growth.kind == "exponential"]
    if exponential:
        best = max(exponential, key=lambda r: r.growth.rate)
        reason = f"anticonfined singularity {best.entry} grows exponentially"
        result = Verdict(NON_INTEGRABLE, reason, best.growth.rate, best.growth.root)
    elif "linear" in kinds and not nonconfined:
        result = Verdict(LINEARISABLE, "anticonfined singularity with linear growth and no non-confined singularity")
    elif "zero" in kinds and not nonconfined:
        reason = "anticonfined singularity without growth; every other singularity confines"
        result = Verdict(RECOMMEND_DEAUTONOMISATION, reason)
    elif "zero" in kinds:
        reason = "anticonfined singularity without growth next to a non-confined one"
        result = Verdict(LINEARISABLE_OR_NON_INTEGRABLE, reason)
    elif degree_entropy is None:
        result = Verdict(INCONCLUSIVE, "no anticonfined growth and no degree-based entropy")
    elif degree_entropy.entropy > 0:
        est = degree_entropy
        result = Verdict(NON_INTEGRABLE, "positive degree-based entropy", est.entropy, est.dominant_root)
    elif nonconfined:
        result = Verdict(LINEARISABLE, "zero degree-based entropy with a non-confined singularity")
    else:
        result = Verdict(INTEGRABLE_CANDIDATE, "zero degree-based entropy")
    warnings = _consistency(result, degree_entropy)
    for warning in warnings:
        logger.warning(warning)
    return Verdict(result.kind, result.reason, result.bound, result.root, tuple(warnings))


def _consistency(result: Verdict, degree_entropy: Optional[EntropyEstimate]) -> List[str]:
    if degree_entropy is None:
        return []
    h = degree_entropy.entropy
    if result.kind == NON_INTEGRABLE and h == 0 and not degree_entropy.low_confidence:
        return [f"CONSISTENCY: verdict {result.kind} but the degree-based entropy is 0"]
    if result.kind in (LINEARISABLE, INTEGRABLE_CANDIDATE) and h > 0:
        return [f"CONSISTENCY: verdict {result.kind} but the degree-based entropy is {h:.6f}"]
    if result.kind == NON_INTEGRABLE and result.bound is not None and h > 0 and abs(result.bound - h) > 1e-6:
        return [
            f"CONSISTENCY: anticonfined growth rate {result.bound:.9f} differs from the degree-based entropy {h:.9f}"
        ]
    return []
