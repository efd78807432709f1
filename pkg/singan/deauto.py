"""
Deautonomisation checks.

A parameter of an autonomous map is promoted to a sequence a_n that obeys a
stated constraint (a linear or multiplicative recurrence). The checks here
generate the sequence exactly, verify that the singularity patterns of the
non-autonomous map match the autonomous ones, and read off the entropy the
constraint predicts.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import factorint

from .config import AnalysisConfig
from .core import Poly
from .errors import ConstraintViolation, HoldoutMismatch, ParamRangeError
from .growth import Recurrence, RootInterval, char_poly, dominant_root, factor_strings, fit_recurrence
from .maps.model import MapInstance
from .maps.params import Constant, LinRec, MulRec, ParamSeq, param_value
from .singularity import (
    CONFINED,
    NearValue,
    PatternEntry,
    SingularityReport,
    SingularValue,
    classify_singularity,
    find_singular_values,
)

logger = logging.getLogger(__name__)

# MulRec values off the exponent lattice are only generated this far from the start.
MULREC_INDEX_CAP = 12


def gen_params(constraint: ParamSeq, N: int) -> Dict[int, Fraction]:
    """Exact values a_{-N}..a_N; MulRec sequences off a common base stop at |n| <= 12."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    lo, hi = -N, N
    if isinstance(constraint, MulRec) and exponent_lattice(constraint.init) is None and N > MULREC_INDEX_CAP:
        logger.info("mulrec initial values share no common base; generating only |n| <= %d", MULREC_INDEX_CAP)
        lo, hi = -MULREC_INDEX_CAP, MULREC_INDEX_CAP
    values = {n: param_value(constraint, n) for n in range(lo, hi + 1)}
    if isinstance(constraint, MulRec) and any(v == 0 for v in values.values()):
        raise ParamRangeError("mulrec value is zero")
    check_constraint(constraint, values)
    return values


def check_constraint(constraint: ParamSeq, values: Dict[int, Fraction]) -> None:
    """Re-check every window of ``values`` against the recurrence; ConstraintViolation on a violation."""
    if isinstance(constraint, LinRec):
        weights = constraint.coeffs

        def predicted(window):
            return sum((c * a for c, a in zip(weights, reversed(window))), Fraction(0))

    elif isinstance(constraint, MulRec):
        weights = constraint.exponents

        def predicted(window):
            out = Fraction(1)
            for e, a in zip(weights, reversed(window)):
                out *= a**e
            return out

    else:
        return
    k = len(weights)
    indices = sorted(values)
    for n in indices:
        window = [values.get(n + i) for i in range(k)]
        target = values.get(n + k)
        if target is None or any(a is None for a in window):
            continue
        if predicted(window) != target:
            raise ConstraintViolation(f"constraint violated at index {n + k}")


def exponent_lattice(values: Sequence[Fraction]) -> Optional[Tuple[Fraction, List[int]]]:
    """
    Write every value as base**e_i for one rational base.

    Returns (base, exponents) or None when the values are not powers of a
    common base (or are not positive). All values equal to 1 give base 1.
    """
    if any(v <= 0 for v in values):
        return None
    vectors = []
    for v in values:
        v = Fraction(v)
        vector = dict(factorint(v.numerator))
        for prime, power in factorint(v.denominator).items():
            vector[prime] = vector.get(prime, 0) - power
        vectors.append(vector)
    reference = next((vec for vec in vectors if vec), None)
    if reference is None:
        return Fraction(1), [0] * len(values)
    g = math.gcd(*reference.values())
    primitive = {p: e // g for p, e in reference.items()}
    base = Fraction(1)
    for p, e in primitive.items():
        base *= Fraction(p) ** e
    exponents = []
    pivot = next(iter(primitive))
    for vec in vectors:
        if set(vec) - set(primitive):
            return None
        scale = Fraction(vec.get(pivot, 0), primitive[pivot])
        if scale.denominator != 1 or any(vec.get(p, 0) != scale * e for p, e in primitive.items()):
            return None
        exponents.append(int(scale))
    return base, exponents


def mulrec_exponents(constraint: MulRec, count: int) -> Optional[List[int]]:
    """Exponents of a_start, a_start+1, ... on the lattice of the initial values, by integer recursion."""
    lattice = exponent_lattice(constraint.init)
    if lattice is None:
        return None
    exponents = list(lattice[1])
    while len(exponents) < count:
        exponents.append(sum(e * exponents[-i] for i, e in enumerate(constraint.exponents, start=1)))
    return exponents[:count]


def loglog_growth_rate(params: Sequence[Fraction], tail: int = 4, holdout: int = 2) -> float:
    """
    lim (1/n) log log a_n, read from the exponent sequence on the lattice.

    The exponents are fitted with a minimal recurrence and the rate is the
    log of its dominant root; tower-sized values are never put through
    floating-point logarithms.
    """
    values = [Fraction(v) for v in params]
    if len(values) < tail:
        raise ValueError(f"need at least {tail} values")
    if any(v <= 0 for v in values):
        raise ValueError("loglog growth needs positive values")
    if len(set(values)) == 1:
        return 0.0
    lattice = exponent_lattice(values)
    if lattice is None:
        raise ValueError("values are not powers of a common base")
    return _rate_of_exponents(lattice[1], holdout)


def _rate_of_exponents(exponents: Sequence[int], holdout: int) -> float:
    try:
        recurrence = fit_recurrence(exponents, holdout)
    except HoldoutMismatch as exc:
        raise ValueError(f"exponent sequence is not recurrent: {exc.detail}") from exc
    if recurrence is None:
        raise ValueError("exponent sequence is not recurrent")
    root = dominant_root(char_poly(recurrence))
    return 0.0 if root.is_one else math.log(root.value)


def constraint_recurrence(constraint: ParamSeq) -> Optional[Recurrence]:
    """The linear recurrence on values (LinRec) or on exponents (MulRec) the constraint imposes."""
    if isinstance(constraint, LinRec):
        return Recurrence(constraint.order, constraint.coeffs, constraint.order - 1)
    if isinstance(constraint, MulRec):
        return Recurrence(constraint.order, tuple(Fraction(e) for e in constraint.exponents), constraint.order - 1)
    return None


@dataclass(frozen=True)
class ConfinementCheck:
    """One singular value entered in the non-autonomous map and in its autonomous counterpart."""

    value: str
    report: SingularityReport
    autonomous: SingularityReport
    matches_autonomous: bool

    @property
    def confined(self) -> bool:
        return self.report.classification == CONFINED


@dataclass(frozen=True)
class DeautoReport:
    name: str
    param: str
    constraint: ParamSeq
    checks: Tuple[ConfinementCheck, ...]
    char_poly: Optional[Poly]
    factors: Tuple[str, ...]
    dominant_root: Optional[RootInterval]
    predicted_entropy: Optional[float]
    loglog_rate: Optional[float] = None

    @property
    def confinement_verified(self) -> bool:
        """Every singularity that confines in the autonomous map confines here with the same pattern."""
        relevant = [c for c in self.checks if c.autonomous.classification == CONFINED]
        return bool(relevant) and all(c.confined and c.matches_autonomous for c in relevant)

    @property
    def confined_values(self) -> Tuple[str, ...]:
        return tuple(c.value for c in self.checks if c.confined)


def _same_entry(a: PatternEntry, b: PatternEntry) -> bool:
    if type(a) is not type(b) or a.valuation != b.valuation:
        return False
    if isinstance(a, NearValue):
        return a.expr == b.expr
    return True


def patterns_match(report: SingularityReport, reference: SingularityReport) -> bool:
    """Same classification and, for confined patterns, the same entries up to parameter scaling."""
    if report.classification != reference.classification:
        return False
    if len(report.pattern) != len(reference.pattern):
        return False
    return all(_same_entry(a, b) for a, b in zip(report.pattern, reference.pattern))


def autonomous_counterpart(m: MapInstance) -> MapInstance:
    """``m`` with every parameter set to the constant 1."""
    return m.with_params({name: Constant(1) for name in m.params}, name=f"{m.name}/autonomous")


def verify_confinement_under_constraint(
    m: MapInstance,
    v: SingularValue,
    config: Optional[AnalysisConfig] = None,
    singular: Optional[Sequence[SingularValue]] = None,
) -> ConfinementCheck:
    """Classify ``v`` in ``m`` and compare its pattern with the one of the autonomous map."""
    config = config or AnalysisConfig()
    if singular is None:
        singular = find_singular_values(m)
    report = classify_singularity(m, v, config, singular)
    reference = classify_singularity(autonomous_counterpart(m), v, config, singular)
    matches = patterns_match(report, reference)
    logger.info(
        "%s: %s is %s (autonomous: %s, shapes match: %s)",
        m.name,
        v.label,
        report.classification,
        reference.classification,
        matches,
    )
    return ConfinementCheck(v.label, report, reference, matches)


def deautonomisation_report(m: MapInstance, param: str, config: Optional[AnalysisConfig] = None) -> DeautoReport:
    """Run every confinement check for ``m`` and summarise what the constraint on ``param`` predicts."""
    config = config or AnalysisConfig()
    constraint = m.params[param]
    gen_params(constraint, config.horizon)
    singular = find_singular_values(m)
    checks = tuple(verify_confinement_under_constraint(m, v, config, singular) for v in singular)
    recurrence = constraint_recurrence(constraint)
    poly = root = entropy = loglog = None
    factors: Tuple[str, ...] = ()
    if recurrence is not None:
        poly = char_poly(recurrence)
        factors = factor_strings(poly)
        root = dominant_root(poly, config.root_tol)
        entropy = 0.0 if root.is_one else math.log(root.value)
    if isinstance(constraint, MulRec):
        exponents = mulrec_exponents(constraint, 2 * config.steps)
        if exponents is not None and len(set(exponents)) > 1:
            loglog = _rate_of_exponents(exponents, config.holdout)
        elif exponents is not None:
            loglog = 0.0
    return DeautoReport(m.name, param, constraint, checks, poly, factors, root, entropy, loglog)
