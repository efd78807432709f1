"""Evaluate rule trees over any field-like value type (Fraction, RatFunc, LaurentValue)."""

from typing import Mapping

from ..dsl.ast import BinOp, Neg, Num, Param, Pow, Var


def evaluate(node, variables: Mapping[str, object], params: Mapping[str, object]):
    """
    Evaluate ``node`` with state variables and parameter values bound.

    Division by an exact zero raises ZeroDivisionError; callers turn it into
    DegenerateOrbit with their step index.
    """
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return variables[node.name]
    if isinstance(node, Param):
        return params[node.name]
    if isinstance(node, Neg):
        return -evaluate(node.operand, variables, params)
    if isinstance(node, Pow):
        base = evaluate(node.base, variables, params)
        if node.exponent < 0 and base == 0:
            raise ZeroDivisionError("zero raised to a negative power")
        return base**node.exponent
    lhs = evaluate(node.lhs, variables, params)
    rhs = evaluate(node.rhs, variables, params)
    if node.op == "+":
        return lhs + rhs
    if node.op == "-":
        return lhs - rhs
    if node.op == "*":
        return lhs * rhs
    return lhs / rhs
