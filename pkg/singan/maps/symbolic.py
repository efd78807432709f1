"""Conversions between rule trees and sympy expressions, and symbolic inversion."""

from fractions import Fraction
from typing import Dict, Tuple

import sympy
from sympy import Add, Mul, Poly, Rational, Symbol, cancel, expand, fraction, nan, oo, together, zoo

from ..dsl.ast import BinOp, Neg, Num, Param, Pow, Var, ident
from ..errors import NotMobius

_SYMBOLS: Dict[str, Symbol] = {}


def symbol(name: str) -> Symbol:
    """One sympy Symbol per name, created directly so names like ``E`` or ``I`` stay plain symbols."""
    if name not in _SYMBOLS:
        _SYMBOLS[name] = Symbol(name)
    return _SYMBOLS[name]


def to_sympy(node) -> sympy.Expr:
    if isinstance(node, Num):
        return Rational(node.value.numerator, node.value.denominator)
    if isinstance(node, (Var, Param)):
        return symbol(node.name)
    if isinstance(node, Neg):
        return -to_sympy(node.operand)
    if isinstance(node, Pow):
        return to_sympy(node.base) ** node.exponent
    lhs, rhs = to_sympy(node.lhs), to_sympy(node.rhs)
    if node.op == "+":
        return lhs + rhs
    if node.op == "-":
        return lhs - rhs
    if node.op == "*":
        return lhs * rhs
    return lhs / rhs


def is_undefined(expr) -> bool:
    """True for a rule that folds to a pole or an indeterminate form whatever the state."""
    return expr.has(zoo, nan, oo, -oo)


def reduced(expr) -> sympy.Expr:
    """Reduced rational form p/q with no common factor."""
    return cancel(together(expr))


def _term(coeff: Fraction, monomial) -> object:
    node = None
    for name, power in monomial:
        factor = ident(name) if power == 1 else Pow(ident(name), power)
        node = factor if node is None else BinOp("*", node, factor)
    if node is None:
        return Num(coeff)
    if coeff == 1:
        return node
    return BinOp("*", Num(coeff), node)


def _poly_to_ast(expr):
    expr = expand(expr)
    terms = Add.make_args(expr)
    node = None
    for term in terms:
        coeff, rest = term.as_coeff_Mul()
        coeff = Fraction(int(coeff.p), int(coeff.q)) if coeff.is_Rational else None
        if coeff is None:
            raise ValueError(f"cannot convert {term} to a rule")
        monomial = []
        for factor in Mul.make_args(rest):
            if factor == 1:
                continue
            base, power = factor.as_base_exp()
            if not isinstance(base, Symbol) or not power.is_Integer:
                raise ValueError(f"cannot convert {factor} to a rule")
            monomial.append((base.name, int(power)))
        monomial.sort()
        negative = coeff < 0
        leaf = _term(-coeff if negative and node is not None else coeff, monomial)
        if node is None:
            node = leaf
        else:
            node = BinOp("-" if negative else "+", node, leaf)
    return node if node is not None else Num(Fraction(0))


def from_sympy(expr):
    """Rule tree for a rational expression, written as one numerator over one denominator."""
    num, den = fraction(reduced(expr))
    top = _poly_to_ast(num)
    if den == 1:
        return top
    return BinOp("/", top, _poly_to_ast(den))


def mobius_coefficients(expr, y: Symbol) -> Tuple[sympy.Expr, sympy.Expr, sympy.Expr, sympy.Expr]:
    """Write ``expr`` as (A*y + B)/(C*y + D); NotMobius when the degree in y exceeds 1."""
    if is_undefined(expr):
        raise NotMobius("rule is undefined for every state")
    num, den = fraction(reduced(expr))
    pn, pd = Poly(num, y), Poly(den, y)
    if pn.degree() > 1 or pd.degree() > 1:
        raise NotMobius(f"degree {max(pn.degree(), pd.degree())} in y")
    A, B = pn.coeff_monomial(y), pn.coeff_monomial(1)
    C, D = pd.coeff_monomial(y), pd.coeff_monomial(1)
    if expand(A * D - B * C) == 0:
        raise NotMobius("rule does not depend on y")
    return A, B, C, D


def invert_rule(rule):
    """
    Solve x_{n+1} = f(x_n, x_{n-1}) for x_{n-1}.

    With f = (A y + B)/(C y + D) and r the new value the solution is
    y = (B - D r)/(C r - A); in the returned tree ``y`` stands for r.
    """
    y = symbol("y")
    r = sympy.Dummy("r")
    A, B, C, D = mobius_coefficients(to_sympy(rule), y)
    solved = reduced((B - D * r) / (C * r - A)).subs(r, y)
    if is_undefined(solved):
        raise NotMobius("the inverse is undefined for every state")
    try:
        return from_sympy(solved)
    except ValueError as exc:
        raise NotMobius(str(exc)) from exc


def auto_invert(m):
    """Backward rule for a scalar map whose forward rule is Möbius in y."""
    if m.arity != "scalar":
        raise NotMobius(f"map {m.name!r} is a pair map; write its backward rule explicitly")
    return invert_rule(m.forward[0])


def sympy_rule(rule) -> Tuple[sympy.Expr, ...]:
    return tuple(to_sympy(node) for node in rule)


def substitute_params(expr, values: Dict[str, Fraction]):
    mapping = {symbol(k): Rational(v.numerator, v.denominator) for k, v in values.items()}
    return expr.xreplace(mapping) if mapping else expr

