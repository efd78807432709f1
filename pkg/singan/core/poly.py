"""
Dense univariate polynomials over a sympy domain.

The representation is sympy's dense list (highest degree first), so the
kernels of ``sympy.polys`` do the arithmetic; ``coeffs`` exposes the lowest
degree first view.
"""

from dataclasses import dataclass
from typing import Iterable, List, Tuple

from sympy.polys.densearith import dup_add, dup_div, dup_exquo, dup_mul, dup_mul_ground, dup_neg, dup_sub
from sympy.polys.densebasic import dup_strip
from sympy.polys.densetools import dup_diff, dup_eval, dup_monic
from sympy.polys.domains import QQ
from sympy.polys.euclidtools import dup_gcd

from .fields import to_domain


@dataclass(frozen=True)
class Poly:
    rep: Tuple
    domain: object = QQ
    var: str = "t"

    @classmethod
    def from_dense(cls, rep: List, domain=QQ, var: str = "t") -> "Poly":
        return cls(tuple(dup_strip(list(rep))), domain, var)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable, domain=QQ, var: str = "t") -> "Poly":
        """Build from coefficients listed lowest degree first."""
        rep = [to_domain(domain, c) for c in coeffs]
        rep.reverse()
        return cls.from_dense(rep, domain, var)

    @classmethod
    def zero(cls, domain=QQ, var: str = "t") -> "Poly":
        return cls((), domain, var)

    @classmethod
    def constant(cls, value, domain=QQ, var: str = "t") -> "Poly":
        return cls.from_dense([to_domain(domain, value)], domain, var)

    @classmethod
    def gen(cls, domain=QQ, var: str = "t") -> "Poly":
        return cls.from_dense([domain.one, domain.zero], domain, var)

    @property
    def coeffs(self) -> List:
        return list(reversed(self.rep))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.rep) - 1

    @property
    def is_zero(self) -> bool:
        return not self.rep

    @property
    def lc(self):
        return self.rep[0] if self.rep else self.domain.zero

    def _check(self, other: "Poly") -> None:
        if self.domain != other.domain or self.var != other.var:
            raise ValueError(f"incompatible polynomials over {self.domain}[{self.var}] and {other.domain}[{other.var}]")

    def _wrap(self, rep) -> "Poly":
        return Poly(tuple(rep), self.domain, self.var)

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        return self._wrap(dup_add(list(self.rep), list(other.rep), self.domain))

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        return self._wrap(dup_sub(list(self.rep), list(other.rep), self.domain))

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        return self._wrap(dup_mul(list(self.rep), list(other.rep), self.domain))

    def __neg__(self) -> "Poly":
        return self._wrap(dup_neg(list(self.rep), self.domain))

    def scale(self, a) -> "Poly":
        return self._wrap(dup_mul_ground(list(self.rep), to_domain(self.domain, a), self.domain))

    def divmod(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        q, r = dup_div(list(self.rep), list(other.rep), self.domain)
        return self._wrap(q), self._wrap(r)

    def exquo(self, other: "Poly") -> "Poly":
        self._check(other)
        return self._wrap(dup_exquo(list(self.rep), list(other.rep), self.domain))

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        return self._wrap(dup_monic(list(self.rep), self.domain))

    def diff(self) -> "Poly":
        return self._wrap(dup_diff(list(self.rep), 1, self.domain))

    def eval(self, point):
        return dup_eval(list(self.rep), to_domain(self.domain, point), self.domain)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for power, c in reversed(list(enumerate(self.coeffs))):
            if not c:
                continue
            coeff = str(self.domain.to_sympy(c))
            if power == 0:
                terms.append(coeff)
                continue
            mono = self.var if power == 1 else f"{self.var}^{power}"
            if coeff == "1":
                terms.append(mono)
            elif coeff == "-1":
                terms.append("-" + mono)
            else:
                terms.append(f"{coeff}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor; gcd(0, 0) = 0."""
    a._check(b)
    g = dup_gcd(list(a.rep), list(b.rep), a.domain)
    return a._wrap(dup_monic(g, a.domain) if g else g)
