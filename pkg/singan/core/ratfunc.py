"""Reduced univariate rational functions with a monic denominator."""

from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral

from .poly import Poly, poly_gcd


@dataclass(frozen=True)
class RatFunc:
    num: Poly
    den: Poly

    @classmethod
    def constant(cls, value, domain, var: str = "t") -> "RatFunc":
        return cls(Poly.constant(value, domain, var), Poly.constant(1, domain, var))

    @classmethod
    def gen(cls, domain, var: str = "t") -> "RatFunc":
        return cls(Poly.gen(domain, var), Poly.constant(1, domain, var))

    @property
    def domain(self):
        return self.num.domain

    @property
    def var(self) -> str:
        return self.num.var

    @property
    def degree(self) -> int:
        """max(deg num, deg den), the degree read off for growth sequences."""
        return max(self.num.degree, self.den.degree, 0)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (Fraction, Integral)):
            return RatFunc.constant(other, self.domain, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ratfunc_reduce(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        # cross-cancel first so the products are already coprime
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        num = _exquo(self.num, g1) * _exquo(other.num, g2)
        den = _exquo(self.den, g2) * _exquo(other.den, g1)
        return _normalize(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero:
            raise ZeroDivisionError("inverse of the zero rational function")
        return _normalize(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, exponent: int) -> "RatFunc":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = RatFunc.constant(1, self.domain, self.var)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __str__(self) -> str:
        if self.den.degree == 0:
            return str(self.num)
        return f"({self.num})/({self.den})"


def _exquo(p: Poly, g: Poly) -> Poly:
    if g.is_zero or g.degree == 0:
        return p
    return p.exquo(g)


def _normalize(num: Poly, den: Poly) -> RatFunc:
    if den.is_zero:
        raise ZeroDivisionError("zero denominator")
    if num.is_zero:
        return RatFunc(num, Poly.constant(1, den.domain, den.var))
    lc = den.lc
    if lc != den.domain.one:
        inv = den.domain.quo(den.domain.one, lc)
        num, den = num.scale(inv), den.scale(inv)
    return RatFunc(num, den)


def ratfunc_reduce(num: Poly, den: Poly) -> RatFunc:
    """Cancel the gcd and normalize the denominator to be monic."""
    if den.is_zero:
        raise ZeroDivisionError("zero denominator")
    if num.is_zero:
        return _normalize(num, den)
    g = poly_gcd(num, den)
    return _normalize(_exquo(num, g), _exquo(den, g))
