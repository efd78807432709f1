import math
from fractions import Fraction

import pytest

from singan.catalog import load_maps
from singan.deauto import (
    autonomous_counterpart,
    check_constraint,
    constraint_recurrence,
    deautonomisation_report,
    exponent_lattice,
    gen_params,
    loglog_growth_rate,
    mulrec_exponents,
)
from singan.errors import ConstraintViolation
from singan.growth import char_poly, factor_strings
from singan.maps import Constant, LinRec, MulRec, param_value

maps = load_maps()

POWERS_OF_TWO = MulRec((0, 2, 1), (2, 2, 2))


def test_gen_params_linrec():
    values = gen_params(LinRec((2, -1), (1, 2)), 3)
    assert values == {n: Fraction(n + 1) for n in range(-3, 4)}


def test_gen_params_checks_the_constraint():
    values = gen_params(POWERS_OF_TWO, 4)
    assert values[3] == 8
    assert values[-1] == Fraction(1, 2)


def test_check_constraint_reports_the_violating_index():
    with pytest.raises(ConstraintViolation, match="index 2"):
        check_constraint(LinRec((2, -1), (1, 2)), {0: Fraction(1), 1: Fraction(2), 2: Fraction(4)})
    check_constraint(Constant(Fraction(3)), {0: Fraction(1), 1: Fraction(7)})


@pytest.mark.parametrize(
    "values, expected",
    [
        ([Fraction(4), Fraction(8), Fraction(1, 2)], (Fraction(2), [2, 3, -1])),
        ([Fraction(9, 4), Fraction(2, 3)], (Fraction(3, 2), [2, -1])),
        ([Fraction(1), Fraction(1)], (Fraction(1), [0, 0])),
        ([Fraction(6), Fraction(4)], None),
        ([Fraction(-2), Fraction(4)], None),
    ],
)
def test_exponent_lattice(values, expected):
    assert exponent_lattice(values) == expected


def test_mulrec_exponents():
    assert mulrec_exponents(POWERS_OF_TWO, 8) == [1, 1, 1, 3, 3, 7, 9, 17]
    assert mulrec_exponents(MulRec((1, 1), (2, 3)), 4) is None


def test_loglog_growth_rate_of_a_tower():
    values = [param_value(POWERS_OF_TWO, n) for n in range(10)]
    assert abs(loglog_growth_rate(values) - math.log((1 + math.sqrt(5)) / 2)) < 1e-9
    assert loglog_growth_rate([Fraction(5)] * 6) == 0.0
    with pytest.raises(ValueError):
        loglog_growth_rate([Fraction(2), Fraction(4)])


def test_constraint_polynomial_factors():
    p = char_poly(constraint_recurrence(POWERS_OF_TWO))
    assert set(factor_strings(p)) == {"(λ + 1)", "(λ^2 - λ - 1)"}
    assert constraint_recurrence(Constant(Fraction(1))) is None


def test_autonomous_counterpart_freezes_parameters():
    m = autonomous_counterpart(maps["dp2-linear"])
    assert m.name == "dp2-linear/autonomous"
    assert m.autonomous


def test_dp2_with_linear_parameter_keeps_confining():
    d = deautonomisation_report(maps["dp2-linear"], "a")
    assert d.confinement_verified
    assert d.confined_values == ("-1", "1")
    assert d.predicted_entropy == 0.0
    assert d.loglog_rate is None
