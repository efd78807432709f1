"""
Degree growth and algebraic entropy.

Iterates are computed over Q(t) with x0 a random rational and x1 = t, the
degrees of the reduced iterates are fitted with a minimal linear recurrence,
and the dominant root of its characteristic polynomial is isolated with a
Sturm chain and exact bisection.
"""

import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import sympy
from sympy import Matrix, Rational, sturm

from .config import AnalysisConfig
from .core import QQ, Poly, RatFunc
from .errors import BudgetExceeded, DegenerateOrbit, HoldoutMismatch, UnsupportedSpectrum
from .maps.model import FORWARD, SCALAR, MapInstance, step

logger = logging.getLogger(__name__)

LAMBDA = "λ"


@dataclass(frozen=True)
class DegreeSequence:
    degrees: Tuple[int, ...]
    seeds_used: Tuple[int, ...]
    warnings: Tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.degrees)


@dataclass(frozen=True)
class Recurrence:
    """d_{n+1} = sum_i coeffs[i-1] * d_{n+1-i}, holding for every n >= valid_from."""

    order: int
    coeffs: Tuple[Fraction, ...]
    valid_from: int

    def predict(self, history: Sequence) -> Fraction:
        return sum((c * history[-i] for i, c in enumerate(self.coeffs, start=1)), Fraction(0))

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs, start=1):
            if c == 0:
                continue
            shift = "d_n" if i == 1 else f"d_{{n-{i - 1}}}"
            magnitude = abs(c)
            text = shift if magnitude == 1 else f"{magnitude} {shift}"
            terms.append(("- " if c < 0 else "+ ") + text)
        body = " ".join(terms).lstrip("+ ") if terms else "0"
        if body.startswith("- "):
            body = "-" + body[2:]
        return f"d_{{n+1}} = {body}"


@dataclass(frozen=True)
class RootInterval:
    lo: Fraction
    hi: Fraction

    @property
    def value(self) -> float:
        return float((self.lo + self.hi) / 2)

    @property
    def is_one(self) -> bool:
        return self.lo == self.hi == 1

    def decimal(self, digits: int = 12) -> str:
        return f"{self.value:.{digits}f}"


@dataclass(frozen=True)
class EntropyEstimate:
    degrees: DegreeSequence
    recurrence: Optional[Recurrence]
    char_poly: Optional[Poly]
    factors: Tuple[str, ...]
    dominant_root: Optional[RootInterval]
    entropy: float
    growth_type: str  # bounded | polynomial | exponential
    order: Optional[int] = None
    method: str = "recurrence"
    warnings: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def low_confidence(self) -> bool:
        return self.method == "ratio"


def random_x0(rng: random.Random, height: int) -> Fraction:
    value = Fraction(0)
    while value == 0:
        value = Fraction(rng.randint(-height, height), rng.randint(1, height))
    return value


def _degrees_for_seed(m: MapInstance, N: int, seed: int, height: int) -> List[int]:
    rng = random.Random(seed)
    x0 = RatFunc.constant(random_x0(rng, height), QQ)
    t = RatFunc.gen(QQ)
    degrees = [0, 1]
    if m.arity == SCALAR:
        state, n = (x0, t), 1
        for _ in range(N - 1):
            state = step(m, state, n, FORWARD)
            n += 1
            degrees.append(state[1].degree)
    else:
        state, n = (x0, t), 0
        for _ in range(N - 1):
            state = step(m, state, n, FORWARD)
            n += 1
            degrees.append(max(component.degree for component in state))
    logger.debug("seed %d degrees %s", seed, degrees)
    return degrees


def degree_sequence(m: MapInstance, N: int, seeds: Sequence[int], x0_height: int = 50) -> DegreeSequence:
    """
    Degrees d_0..d_N of the iterates from x0 = random rational, x1 = t.

    Seeds whose orbit hits an exact pole are replaced by the next unused seed.
    The result is the index-wise maximum, with a warning for every seed that
    disagrees.
    """
    if N < 4:
        raise ValueError("degree sequences need N >= 4")
    runs, used, warnings = [], [], []
    candidates = list(seeds)
    spare = max(candidates, default=-1) + 1
    while candidates and len(runs) < len(seeds):
        seed = candidates.pop(0)
        try:
            runs.append(_degrees_for_seed(m, N, seed, x0_height))
            used.append(seed)
        except DegenerateOrbit as exc:
            logger.info("seed %d degenerate (%s); trying seed %d", seed, exc.detail, spare)
            if spare - max(seeds) <= len(seeds):
                candidates.append(spare)
                spare += 1
    if not runs:
        raise DegenerateOrbit(0, f"every degree-growth seed of {m.name} hit a pole")
    degrees = tuple(max(run[i] for run in runs) for i in range(N + 1))
    for seed, run in zip(used, runs):
        if tuple(run) != degrees:
            first = next(i for i in range(N + 1) if run[i] != degrees[i])
            warnings.append(f"seed {seed} disagrees from index {first} ({run[first]} < {degrees[first]})")
    for warning in warnings:
        logger.warning("%s: %s", m.name, warning)
    return DegreeSequence(degrees, tuple(used), tuple(warnings))


def _solve(sequence: Sequence[int], k: int, start: int) -> Optional[Tuple[Fraction, ...]]:
    rows, rhs = [], []
    for m in range(start + k, len(sequence)):
        rows.append([sequence[m - i] for i in range(1, k + 1)])
        rhs.append(sequence[m])
    try:
        solution, free = Matrix(rows).gauss_jordan_solve(Matrix(rhs))
    except ValueError:
        return None
    if free.shape[0]:
        solution = solution.subs({p: 0 for p in free})
    return tuple(Fraction(int(v.p), int(v.q)) for v in solution)


def fit_recurrence(d, holdout: int = 2) -> Optional[Recurrence]:
    """
    Minimal-order linear recurrence fitting the sequence minus its last ``holdout`` terms.

    Orders are tried from 1 and, per order, the earliest start first; each
    order-k system needs at least k + 1 equations. A fit that mispredicts a
    held-out term is skipped; if every fit does, HoldoutMismatch is raised.
    """
    sequence = list(d.degrees if isinstance(d, DegreeSequence) else d)
    if holdout < 2:
        raise ValueError("holdout must be at least 2")
    training, held = sequence[:-holdout], sequence[-holdout:]
    mismatch: Optional[HoldoutMismatch] = None
    for k in range(1, len(training) // 2 + 1):
        for start in range(0, len(training) - 2 * k):
            coeffs = _solve(training, k, start)
            if coeffs is None:
                continue
            recurrence = Recurrence(k, coeffs, start + k - 1)
            history = list(training)
            for offset, expected in enumerate(held):
                predicted = recurrence.predict(history)
                if predicted != expected:
                    if mismatch is None:
                        mismatch = HoldoutMismatch(k, len(training) + offset, expected, predicted)
                    break
                history.append(expected)
            else:
                logger.debug("fitted %s from index %d", recurrence, recurrence.valid_from)
                return recurrence
    if mismatch is not None:
        raise mismatch
    return None


def char_poly(r: Recurrence) -> Poly:
    """λ^k - sum_i c_i λ^(k-i)."""
    coeffs = [-c for c in reversed(r.coeffs)] + [Fraction(1)]
    return Poly.from_coeffs(coeffs, QQ, LAMBDA)


def to_sympy_poly(p: Poly) -> sympy.Poly:
    lam = sympy.Symbol(p.var)
    return sympy.Poly([p.domain.to_sympy(c) for c in p.rep], lam, domain="QQ")


def factor_strings(p: Poly) -> Tuple[str, ...]:
    """Irreducible factors over Q, rendered with multiplicities."""
    _, factors = sympy.factor_list(to_sympy_poly(p).as_expr())
    out = []
    for factor, multiplicity in factors:
        text = f"({factor})" if multiplicity == 1 else f"({factor})^{multiplicity}"
        out.append(text.replace("**", "^"))
    return tuple(out)


def _sign_changes(chain, point) -> int:
    signs = [v for v in (q.eval(point) for q in chain) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def dominant_root(p: Poly, tol: Fraction = Fraction(1, 10**12)) -> RootInterval:
    """
    Isolate the largest real root above 1 to width <= tol.

    Returns [1, 1] when no real root exceeds 1. A root of larger modulus that
    is not the positive real dominant root raises UnsupportedSpectrum.
    """
    if p.degree < 1:
        raise ValueError("dominant_root needs a polynomial of degree >= 1")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    f = to_sympy_poly(p).sqf_part()
    chain = sturm(f)
    coeffs = f.all_coeffs()
    bound = 1 + max(abs(Rational(c) / coeffs[0]) for c in coeffs[1:]) if len(coeffs) > 1 else Rational(1)
    lo, hi = Rational(1), Rational(bound) + 1
    if _sign_changes(chain, lo) - _sign_changes(chain, hi) == 0:
        result = RootInterval(Fraction(1), Fraction(1))
    else:
        while hi - lo > Rational(tol.numerator, tol.denominator):
            mid = (lo + hi) / 2
            if _sign_changes(chain, mid) - _sign_changes(chain, hi) >= 1:
                lo = mid
            else:
                hi = mid
        result = RootInterval(Fraction(int(lo.p), int(lo.q)), Fraction(int(hi.p), int(hi.q)))
    _check_spectrum(f, result)
    return result


def _check_spectrum(f: sympy.Poly, root: RootInterval) -> None:
    dominant = max(root.value, 1.0)
    for z in f.nroots(n=15):
        modulus = abs(complex(z))
        if modulus > dominant * (1 + 1e-9) + 1e-9:
            raise UnsupportedSpectrum(
                f"root {z} of {f.as_expr()} has modulus {modulus:.6f} above the real root {dominant:.6f}"
            )


def root_one_multiplicity(p: Poly) -> int:
    lam_minus_one = Poly.from_coeffs([-1, 1], p.domain, p.var)
    count = 0
    while not p.is_zero and p.degree >= 1:
        q, r = p.divmod(lam_minus_one)
        if not r.is_zero:
            break
        p, count = q, count + 1
    return count


def looks_exponential(degrees: Sequence[int]) -> bool:
    """
    True when the last degree ratio stays as far above 1 as the one halfway along.

    Polynomial growth n^k has ratios near 1 + k/n, so the excess halves from
    the middle of the sequence to its end.
    """
    d = degrees
    if len(d) < 4 or d[-2] <= 0 or d[-1] <= d[-2]:
        return False
    mid = len(d) // 2
    if d[mid - 1] <= 0:
        return True
    return d[-1] / d[-2] - 1 > 0.75 * (d[mid] / d[mid - 1] - 1)


def _ratio_estimate(degrees: DegreeSequence, warnings: List[str]) -> EntropyEstimate:
    d = degrees.degrees
    if d[-2] > 0 and d[-1] > d[-2]:
        entropy = math.log(d[-1] / d[-2])
    else:
        entropy = 0.0
    growth = "exponential" if entropy > 0 else "bounded"
    warnings.append(
        f"no recurrence fits the degrees; ratio estimate log(d_N/d_(N-1)) = {entropy:.6f} is low-confidence"
    )
    logger.warning(warnings[-1])
    return EntropyEstimate(degrees, None, None, (), None, entropy, growth, None, "ratio", tuple(warnings))


def entropy_from_recurrence(r: Recurrence, tol: Fraction) -> Tuple[Poly, RootInterval, float, str, Optional[int]]:
    p = char_poly(r)
    root = dominant_root(p, tol)
    if not root.is_one:
        return p, root, math.log(root.value), "exponential", None
    multiplicity = root_one_multiplicity(p)
    if multiplicity <= 1:
        return p, root, 0.0, "bounded", None
    return p, root, 0.0, "polynomial", multiplicity - 1


def entropy_estimate(
    m: MapInstance,
    N: Optional[int] = None,
    seeds: Optional[Sequence[int]] = None,
    config: Optional[AnalysisConfig] = None,
) -> EntropyEstimate:
    """
    Entropy from the fitted degree recurrence, falling back to the degree ratio.

    While no recurrence fits, N is extended two steps at a time up to
    ``max_steps`` for exponentially growing degrees and up to
    ``slow_growth_steps`` otherwise.
    """
    config = config or AnalysisConfig()
    N = N or config.steps
    if N > config.max_steps:
        raise BudgetExceeded(f"{N} degree steps requested; the ceiling is max_steps={config.max_steps}")
    seeds = list(seeds) if seeds is not None else [config.seed + i for i in range(config.seeds)]
    warnings: List[str] = []
    while True:
        degrees = degree_sequence(m, N, seeds, config.x0_height)
        try:
            recurrence = fit_recurrence(degrees, config.holdout)
        except HoldoutMismatch as exc:
            logger.info("%s: %s", m.name, exc.detail)
            recurrence = None
            mismatch = exc.detail
        else:
            mismatch = None
        if recurrence is not None:
            break
        ceiling = config.max_steps
        if not looks_exponential(degrees.degrees):
            ceiling = min(ceiling, config.slow_growth_steps)
        if N + 2 > ceiling:
            logger.info("%s: no recurrence fits up to N=%d (ceiling %d)", m.name, N, ceiling)
            break
        N += 2
        logger.info("%s: no recurrence fits; extending the degree sequence to N=%d", m.name, N)
    warnings.extend(degrees.warnings)
    if recurrence is None:
        if mismatch:
            warnings.append(mismatch)
        return _ratio_estimate(degrees, warnings)
    p, root, entropy, growth, order = entropy_from_recurrence(recurrence, config.root_tol)
    factors = factor_strings(p)
    return EntropyEstimate(degrees, recurrence, p, factors, root, entropy, growth, order, "recurrence", tuple(warnings))
