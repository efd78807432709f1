import random
from fractions import Fraction

import pytest
import sympy

from singan.catalog import load_maps
from singan.config import AnalysisConfig
from singan.dsl import parse_rule
from singan.growth import (
    Recurrence,
    char_poly,
    degree_sequence,
    dominant_root,
    entropy_estimate,
    random_x0,
    to_sympy_poly,
)
from singan.maps import SCALAR, StateTransform, check_conjugacy, conjugate_map
from singan.maps.symbolic import reduced, symbol, to_sympy
from singan.singularity import (
    CONFINED,
    Seed,
    classify_seed,
    classify_singularity,
    entry_symbol,
    find_singular_values,
    probe_anticonfined,
)

maps = load_maps()

TANH = StateTransform.from_pointwise(parse_rule("(1 - x)/(1 + x)")[0], parse_rule("(1 - x)/(1 + x)")[0])
PAIR_IDENTITY = StateTransform(parse_rule("(X, Y)"), parse_rule("(X, Y)"))
TOL = Fraction(1, 10**12)


def shape(report):
    return [(entry_symbol(e), e.valuation) for e in report.pattern]


@pytest.mark.parametrize(
    "name, seed, scaled",
    [
        ("cqii", "c, 1 + eps", "c, 1 + 5*eps"),
        ("cqii", "c, -1 + eps", "c, -1 - eps/3"),
        ("golden", "c, 1 + eps", "c, 1 + 2*eps"),
    ],
)
def test_confinement_does_not_depend_on_the_scale_of_eps(name, seed, scaled):
    a = classify_seed(maps[name], Seed.parse(seed))
    b = classify_seed(maps[name], Seed.parse(scaled))
    assert a.classification == b.classification == CONFINED
    assert shape(a) == shape(b)


@pytest.mark.parametrize(
    "name, seed, scaled",
    [
        ("cqii", "c, 1/eps", "c, 1/(3*eps)"),
        ("dqii-k2", "c, eps", "c, -7*eps"),
    ],
)
def test_anticonfined_valuations_do_not_depend_on_the_scale_of_eps(name, seed, scaled):
    a = probe_anticonfined(maps[name], Seed.parse(seed))
    b = probe_anticonfined(maps[name], Seed.parse(scaled))
    assert a.forward_valuations == b.forward_valuations
    assert a.backward_valuations == b.backward_valuations
    assert a.growth.kind == b.growth.kind


@pytest.mark.parametrize("name", ["cqii", "golden", "dp2-linear", "golden-deauto"])
def test_confinement_survives_a_longer_horizon(name):
    m = maps[name]
    for v in find_singular_values(m):
        short = classify_singularity(m, v, AnalysisConfig(horizon=6))
        if short.classification != CONFINED:
            continue
        longer = classify_singularity(m, v, AnalysisConfig(horizon=12))
        assert longer.classification == CONFINED
        assert shape(longer) == shape(short)


def composed_degrees(m, N: int, seed: int):
    """Degrees of the iterates composed directly with sympy from x0 = random rational, x1 = t."""
    t, x, y = sympy.Symbol("t"), symbol("x"), symbol("y")
    f = to_sympy(m.forward[0])
    x0 = random_x0(random.Random(seed), 50)
    prev, cur = sympy.Rational(x0.numerator, x0.denominator), t
    degrees = [0, 1]
    for _ in range(N - 1):
        prev, cur = cur, sympy.cancel(f.subs({x: cur, y: prev}, simultaneous=True))
        num, den = sympy.fraction(cur)
        degrees.append(max(sympy.degree(num, t), sympy.degree(den, t)))
    return tuple(degrees)


@pytest.mark.parametrize("name, N", [("cqii", 8), ("golden", 7), ("dqii-k2", 8), ("dqii-k3", 5), ("tanh-k2", 6)])
def test_degrees_match_direct_composition(name, N):
    assert degree_sequence(maps[name], N, [0]).degrees == composed_degrees(maps[name], N, 0)


@pytest.mark.parametrize("name", ["cqii", "golden", "henon", "dqii-k2"])
def test_degrees_do_not_depend_on_the_random_seeds(name):
    a = degree_sequence(maps[name], 8, [0, 1, 2])
    b = degree_sequence(maps[name], 8, [11, 12, 13])
    assert a.degrees == b.degrees
    assert not a.warnings and not b.warnings


@pytest.mark.parametrize("coeffs", [(1, 1), (2, 0, -1), (3, -1), (2,), (1, 1, 1), (0, 1, 1)])
def test_dominant_root_interval_brackets_a_sign_change(coeffs):
    p = char_poly(Recurrence(len(coeffs), tuple(Fraction(c) for c in coeffs), 0))
    root = dominant_root(p, TOL)
    f = to_sympy_poly(p)
    lo = f.eval(sympy.Rational(root.lo.numerator, root.lo.denominator))
    hi = f.eval(sympy.Rational(root.hi.numerator, root.hi.denominator))
    assert lo * hi <= 0
    assert root.hi - root.lo <= TOL


@pytest.mark.parametrize("source, target, steps", [("tanh-k2", "dqii-k2", 10), ("tanh-k3", "dqii-k3", 6)])
def test_entropy_is_invariant_under_a_change_of_variables(source, target, steps):
    config = AnalysisConfig(steps=steps, max_steps=steps)
    a = entropy_estimate(maps[source], config=config)
    b = entropy_estimate(conjugate_map(maps[source], TANH), config=config)
    c = entropy_estimate(maps[target], config=config)
    assert a.degrees.degrees == b.degrees.degrees == c.degrees.degrees
    assert a.entropy == pytest.approx(c.entropy, abs=1e-9)
    assert b.entropy == pytest.approx(c.entropy, abs=1e-9)


def test_dp2_conjugated_into_the_variables_x_and_z():
    T = StateTransform(parse_rule("(X, Y/X^2)"), parse_rule("(X, Y*X^2)"))
    conjugated = conjugate_map(maps["dp2-pair"], T, name="dp2/xz")
    assert check_conjugacy(conjugated, PAIR_IDENTITY, maps["antimac"], trials=50, n=3)
    assert check_conjugacy(maps["antimac"], PAIR_IDENTITY, conjugated, trials=50, n=5)


def same_rules(a, b) -> bool:
    rules = zip(a.forward + a.backward, b.forward + b.backward)
    return all(reduced(to_sympy(p) - to_sympy(q)) == 0 for p, q in rules)


@pytest.mark.parametrize("name", sorted(load_maps()))
def test_conjugation_is_functorial(name):
    m = maps[name]
    if m.arity == SCALAR:
        assert same_rules(conjugate_map(m, StateTransform.identity()), m)
        # (1-x)/(1+x) is an involution
        assert same_rules(conjugate_map(conjugate_map(m, TANH), TANH), m)
    else:
        assert same_rules(conjugate_map(m, PAIR_IDENTITY), m)
