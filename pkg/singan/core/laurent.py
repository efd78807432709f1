"""
Truncated Laurent values in the infinitesimal eps.

A value is eps^valuation * (c0 + c1*eps + ...) where ``coeffs`` holds only the
coefficients that are known exactly (c0 != 0, at most truncation + 1 of them).
Cancellation shortens the known window; when it cancels entirely the value is
not representable and PrecisionExhausted is raised so the caller can restart
the whole orbit at a larger truncation.
"""

from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral
from typing import Tuple

from ..errors import PrecisionExhausted
from .fields import to_domain


@dataclass(frozen=True)
class LaurentValue:
    valuation: int
    coeffs: Tuple
    truncation: int
    domain: object

    def __post_init__(self):
        if not self.coeffs or not self.coeffs[0]:
            raise PrecisionExhausted("leading coefficient must be nonzero")

    @classmethod
    def constant(cls, value, domain, truncation: int) -> "LaurentValue":
        a = to_domain(domain, value)
        if not a:
            raise ArithmeticError("exact zero is not a Laurent value")
        return cls(0, (a,) + (domain.zero,) * truncation, truncation, domain)

    @classmethod
    def monomial(cls, power: int, domain, truncation: int, coeff=1) -> "LaurentValue":
        a = to_domain(domain, coeff)
        return cls(power, (a,) + (domain.zero,) * truncation, truncation, domain)

    @property
    def leading(self):
        return self.coeffs[0]

    @property
    def precision(self) -> int:
        """Absolute order up to which the value is known."""
        return self.valuation + len(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, LaurentValue):
            if other.truncation != self.truncation:
                raise ValueError("Laurent operands must share one truncation")
            return other
        if isinstance(other, (Fraction, Integral)):
            if other == 0:
                return None
            return LaurentValue.constant(other, self.domain, self.truncation)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other is None:
            return self
        return laurent_add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "LaurentValue":
        return LaurentValue(self.valuation, tuple(-c for c in self.coeffs), self.truncation, self.domain)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other is None:
            return self
        return laurent_add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other is None:
            return -self
        return laurent_add(other, -self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other is None:
            raise ArithmeticError("product with exact zero is not a Laurent value")
        return laurent_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other is None:
            raise ZeroDivisionError("Laurent division by exact zero")
        return laurent_mul(self, laurent_inv(other))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other is None:
            raise ArithmeticError("exact zero is not a Laurent value")
        return laurent_mul(other, laurent_inv(self))

    def __pow__(self, exponent: int) -> "LaurentValue":
        if exponent < 0:
            return laurent_inv(self) ** (-exponent)
        result = LaurentValue.constant(1, self.domain, self.truncation)
        base = self
        while exponent:
            if exponent & 1:
                result = laurent_mul(result, base)
            exponent >>= 1
            if exponent:
                base = laurent_mul(base, base)
        return result

    def __str__(self) -> str:
        head = self.domain.to_sympy(self.leading)
        return f"eps^{self.valuation}*({head} + ...)"


def laurent_mul(a: LaurentValue, b: LaurentValue) -> LaurentValue:
    K = a.domain
    n = min(len(a.coeffs), len(b.coeffs))
    out = []
    for k in range(n):
        s = K.zero
        for i in range(k + 1):
            s += a.coeffs[i] * b.coeffs[k - i]
        out.append(s)
    return LaurentValue(a.valuation + b.valuation, tuple(out), a.truncation, K)


def laurent_add(a: LaurentValue, b: LaurentValue) -> LaurentValue:
    K = a.domain
    v = min(a.valuation, b.valuation)
    top = min(a.precision, b.precision, v + a.truncation + 1)
    out = []
    for e in range(v, top):
        s = K.zero
        i = e - a.valuation
        if 0 <= i < len(a.coeffs):
            s += a.coeffs[i]
        j = e - b.valuation
        if 0 <= j < len(b.coeffs):
            s += b.coeffs[j]
        out.append(s)
    k = 0
    while k < len(out) and not out[k]:
        k += 1
    if k == len(out):
        raise PrecisionExhausted()
    return LaurentValue(v + k, tuple(out[k:]), a.truncation, K)


def laurent_inv(a: LaurentValue) -> LaurentValue:
    K = a.domain
    inv0 = K.quo(K.one, a.coeffs[0])
    out = [inv0]
    for k in range(1, len(a.coeffs)):
        s = K.zero
        for j in range(1, k + 1):
            s += a.coeffs[j] * out[k - j]
        out.append(-s * inv0)
    return LaurentValue(-a.valuation, tuple(out), a.truncation, K)
