import math
from fractions import Fraction

import pytest

from singan.catalog import load_maps
from singan.config import AnalysisConfig
from singan.dsl import parse_mapfile
from singan.errors import BudgetExceeded, HoldoutMismatch
from singan.growth import (
    Recurrence,
    char_poly,
    degree_sequence,
    dominant_root,
    entropy_estimate,
    entropy_from_recurrence,
    factor_strings,
    fit_recurrence,
    looks_exponential,
    root_one_multiplicity,
)

GOLDEN_RATIO = (1 + math.sqrt(5)) / 2
TOL = Fraction(1, 10**12)

# Fibonacci numbers shifted by one: d_{n+1} = 2 d_n - d_{n-2}
SHIFTED_FIBONACCI = [2, 3, 4, 6, 9, 14, 22, 35, 56, 90]

(LINEAR_GROWTH,) = parse_mapfile('map "linear-growth" { kind: scalar forward: x^2/y }')


def test_fibonacci_recurrence():
    r = fit_recurrence([1, 2, 3, 5, 8, 13, 21, 34, 55, 89])
    assert r.order == 2
    assert r.coeffs == (1, 1)
    assert r.valid_from == 1
    assert str(r) == "d_{n+1} = d_n + d_{n-1}"


def test_shifted_fibonacci_needs_order_three():
    r = fit_recurrence(SHIFTED_FIBONACCI)
    assert r.coeffs == (2, 0, -1)
    assert str(r) == "d_{n+1} = 2 d_n - d_{n-2}"
    p = char_poly(r)
    assert str(p) == "λ^3 - 2*λ^2 + 1"
    assert set(factor_strings(p)) == {"(λ - 1)", "(λ^2 - λ - 1)"}
    root = dominant_root(p, TOL)
    assert root.hi - root.lo <= TOL
    assert abs(root.value - GOLDEN_RATIO) < 1e-9


def test_holdout_mismatch_is_raised():
    with pytest.raises(HoldoutMismatch):
        fit_recurrence([1, 2, 4, 8, 16, 32, 64, 128, 3, 5])


def test_holdout_must_be_at_least_two():
    with pytest.raises(ValueError):
        fit_recurrence([1, 2, 3, 4, 5, 6], holdout=1)


@pytest.mark.parametrize(
    "coeffs, growth, order",
    [
        ((Fraction(1),), "bounded", None),
        ((Fraction(2), Fraction(-1)), "polynomial", 1),
        ((Fraction(3), Fraction(-3), Fraction(1)), "polynomial", 2),
    ],
)
def test_growth_type_from_multiplicity_of_one(coeffs, growth, order):
    r = Recurrence(len(coeffs), coeffs, 0)
    p, root, entropy, kind, polynomial_order = entropy_from_recurrence(r, TOL)
    assert root.is_one
    assert entropy == 0.0
    assert (kind, polynomial_order) == (growth, order)
    assert root_one_multiplicity(p) == len(coeffs)


def test_dominant_root_rejects_constants():
    with pytest.raises(ValueError):
        dominant_root(char_poly(Recurrence(0, (), 0)), TOL)


def test_henon_degrees_double():
    config = AnalysisConfig(steps=8)
    estimate = entropy_estimate(load_maps()["henon"], config=config)
    assert estimate.degrees.degrees == (0, 1, 2, 4, 8, 16, 32, 64, 128)
    assert estimate.growth_type == "exponential"
    assert abs(estimate.entropy - math.log(2)) < 1e-9
    assert not estimate.low_confidence


def test_linear_degree_growth():
    degrees = degree_sequence(LINEAR_GROWTH, 10, [0, 1, 2])
    assert degrees.degrees == tuple(range(11))
    assert degrees.seeds_used == (0, 1, 2)
    assert not degrees.warnings
    estimate = entropy_estimate(LINEAR_GROWTH, N=10, config=AnalysisConfig())
    assert estimate.growth_type == "polynomial"
    assert estimate.order == 1
    assert estimate.entropy == 0.0


def test_degree_sequence_needs_a_few_steps():
    with pytest.raises(ValueError):
        degree_sequence(LINEAR_GROWTH, 3, [0])


def test_step_ceiling():
    with pytest.raises(BudgetExceeded):
        entropy_estimate(LINEAR_GROWTH, N=30, config=AnalysisConfig(max_steps=24))


@pytest.mark.parametrize(
    "degrees, expected",
    [
        (list(range(21)), False),
        ([n * n for n in range(21)], False),
        ([1] * 10, False),
        ([0] + [2**n for n in range(14)], True),
        ([1, 1, 2, 3, 5, 8, 13, 21, 34, 55], True),
    ],
)
def test_looks_exponential(degrees, expected):
    assert looks_exponential(degrees) is expected


def test_slow_growth_is_extended_to_twenty_steps_only(monkeypatch):
    monkeypatch.setattr("singan.growth.fit_recurrence", lambda *args: None)
    estimate = entropy_estimate(LINEAR_GROWTH, N=14, config=AnalysisConfig())
    assert len(estimate.degrees.degrees) == 21
    assert estimate.low_confidence


def test_exponential_growth_is_extended_to_max_steps(monkeypatch):
    monkeypatch.setattr("singan.growth.fit_recurrence", lambda *args: None)
    estimate = entropy_estimate(load_maps()["henon"], N=8, config=AnalysisConfig(max_steps=12))
    assert len(estimate.degrees.degrees) == 13
    assert estimate.growth_type == "exponential"
