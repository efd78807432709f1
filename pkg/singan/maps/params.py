"""Non-autonomous parameter sequences a_n, extended both ways from their initial window."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Tuple, Union

from ..errors import ParamRangeError


def _fractions(values) -> Tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


@dataclass(frozen=True)
class Constant:
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True)
class Explicit:
    values: Tuple[Fraction, ...]
    start: int = 0

    def __post_init__(self):
        if not self.values:
            raise ValueError("list parameter needs at least one value")
        object.__setattr__(self, "values", _fractions(self.values))


@dataclass(frozen=True)
class LinRec:
    """a_{n+k} = sum_{i=1..k} coeffs[i-1] * a_{n+k-i}, init placed at start..start+k-1."""

    coeffs: Tuple[Fraction, ...]
    init: Tuple[Fraction, ...]
    start: int = 0
    _cache: Dict[int, Fraction] = field(default_factory=dict, init=False, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if not self.coeffs or len(self.coeffs) != len(self.init):
            raise ValueError(f"linrec of order {len(self.coeffs)} needs exactly {len(self.coeffs)} initial values")
        object.__setattr__(self, "coeffs", _fractions(self.coeffs))
        object.__setattr__(self, "init", _fractions(self.init))

    @property
    def order(self) -> int:
        return len(self.coeffs)


@dataclass(frozen=True)
class MulRec:
    """a_{n+k} = prod_{i=1..k} a_{n+k-i} ** exponents[i-1]."""

    exponents: Tuple[int, ...]
    init: Tuple[Fraction, ...]
    start: int = 0
    _cache: Dict[int, Fraction] = field(default_factory=dict, init=False, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if not self.exponents or len(self.exponents) != len(self.init):
            raise ValueError(
                f"mulrec of order {len(self.exponents)} needs exactly {len(self.exponents)} initial values"
            )
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))
        object.__setattr__(self, "init", _fractions(self.init))
        if any(v == 0 for v in self.init):
            raise ValueError("mulrec initial values must be nonzero")

    @property
    def order(self) -> int:
        return len(self.exponents)


ParamSeq = Union[Constant, Explicit, LinRec, MulRec]


def _next_up(p, cache: Dict[int, Fraction], m: int) -> Fraction:
    if isinstance(p, LinRec):
        return sum((c * cache[m - i] for i, c in enumerate(p.coeffs, start=1)), Fraction(0))
    value = Fraction(1)
    for i, e in enumerate(p.exponents, start=1):
        value *= cache[m - i] ** e
    if value == 0:
        raise ParamRangeError(f"mulrec reached zero at index {m}")
    return value


def _next_down(p, cache: Dict[int, Fraction], m: int) -> Fraction:
    """Solve the relation anchored at m + k for its lowest term a_m."""
    k = p.order
    top = m + k
    if isinstance(p, LinRec):
        lowest = p.coeffs[-1]
        if lowest == 0:
            raise ParamRangeError(f"linrec cannot be extended below index {m + 1}: last coefficient is zero")
        rest = sum((c * cache[top - i] for i, c in enumerate(p.coeffs[:-1], start=1)), Fraction(0))
        return (cache[top] - rest) / lowest
    lowest = p.exponents[-1]
    if lowest not in (1, -1):
        raise ParamRangeError(f"mulrec cannot be extended below index {m + 1}: last exponent is {lowest}, not +-1")
    rest = Fraction(1)
    for i, e in enumerate(p.exponents[:-1], start=1):
        rest *= cache[top - i] ** e
    return (cache[top] / rest) ** lowest


def param_value(p: ParamSeq, n: int) -> Fraction:
    """Exact a_n; recurrences are extended forward and backward on demand and memoised."""
    if isinstance(p, Constant):
        return p.value
    if isinstance(p, Explicit):
        offset = n - p.start
        if not 0 <= offset < len(p.values):
            raise ParamRangeError(
                f"list parameter covers indices {p.start}..{p.start + len(p.values) - 1}, not {n}"
            )
        return p.values[offset]
    cache = p._cache
    if not cache:
        cache.update({p.start + i: v for i, v in enumerate(p.init)})
    if n in cache:
        return cache[n]
    hi, lo = max(cache), min(cache)
    while hi < n:
        hi += 1
        cache[hi] = _next_up(p, cache, hi)
    while lo > n:
        lo -= 1
        cache[lo] = _next_down(p, cache, lo)
    return cache[n]
