"""
Coefficient fields.

Two fields are used throughout: QQ for degree growth, and QQ(c) where ``c``
tracks the free initial value x0 so that "depends on initial data" is decided
exactly.
"""

from fractions import Fraction
from numbers import Integral

from sympy import Rational, Symbol
from sympy.polys.domains import QQ

TRACKER = Symbol("c")
TRACKER_FIELD = QQ.frac_field(TRACKER)


def to_domain(K, value):
    """Convert an int, a Fraction or an element of ``K`` into ``K``."""
    if isinstance(value, (Fraction, Integral)):
        value = Fraction(value)
        return K.from_sympy(Rational(value.numerator, value.denominator))
    if K.of_type(value):
        return value
    return K.convert(value)


def depends_on_tracker(K, a) -> bool:
    if not getattr(K, "is_FractionField", False):
        return False
    return a.numer.degree() > 0 or a.denom.degree() > 0


def to_fraction(K, a) -> Fraction:
    """Read a tracker-free element of ``K`` back as a Fraction."""
    expr = K.to_sympy(a)
    if expr.free_symbols:
        raise ValueError(f"{expr} is not a rational constant")
    return Fraction(int(expr.p), int(expr.q))


def format_element(K, a, tracker_name: str = "c") -> str:
    expr = K.to_sympy(a)
    if tracker_name != TRACKER.name:
        expr = expr.subs(TRACKER, Symbol(tracker_name))
    return str(expr)
