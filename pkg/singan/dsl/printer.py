"""Pretty-printer producing text that parses back to the same tree."""

from fractions import Fraction
from typing import List

from .ast import BinOp, Neg, Num, Param, Pow, Var

PREC = {"+": 10, "-": 10, "*": 20, "/": 20}
UNARY_PREC = 25
POW_PREC = 30
ATOM_PREC = 40


def _num(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _prec(node) -> int:
    if isinstance(node, BinOp):
        return PREC[node.op]
    if isinstance(node, Neg):
        return UNARY_PREC
    if isinstance(node, Pow):
        return POW_PREC
    if isinstance(node, Num) and (node.value < 0 or node.value.denominator != 1):
        return UNARY_PREC if node.value.denominator == 1 else PREC["/"]
    return ATOM_PREC


def _wrap(node, needed: int, top: bool = False) -> str:
    text = format_expr(node, top=False)
    # folded literals always re-parse as one Num only when parenthesized
    if isinstance(node, Num) and _prec(node) < ATOM_PREC and not top:
        return f"({text})"
    if _prec(node) < needed:
        return f"({text})"
    return text


def format_expr(node, top: bool = True) -> str:
    if isinstance(node, Num):
        return _num(node.value)
    if isinstance(node, (Var, Param)):
        return node.name
    if isinstance(node, Neg):
        return "-" + _wrap(node.operand, UNARY_PREC + 1)
    if isinstance(node, Pow):
        exponent = str(node.exponent) if node.exponent >= 0 else f"({node.exponent})"
        return f"{_wrap(node.base, ATOM_PREC)}^{exponent}"
    prec = PREC[node.op]
    lhs = _wrap(node.lhs, prec)
    rhs = _wrap(node.rhs, prec + 1)
    return f"{lhs} {node.op} {rhs}" if prec == 10 else f"{lhs}{node.op}{rhs}"


def format_rule(rule) -> str:
    if len(rule) == 1:
        return format_expr(rule[0])
    return "(" + ", ".join(format_expr(r) for r in rule) + ")"


def format_param(spec) -> str:
    from ..maps.params import Constant, Explicit, LinRec, MulRec

    def nums(values) -> str:
        return "[" + ", ".join(format_expr(Num(Fraction(v))) for v in values) + "]"

    start = f" start={spec.start}" if getattr(spec, "start", 0) else ""
    if isinstance(spec, Constant):
        return "const " + format_expr(Num(spec.value))
    if isinstance(spec, Explicit):
        return "list " + nums(spec.values) + start
    if isinstance(spec, LinRec):
        return f"linrec coeffs={nums(spec.coeffs)} init={nums(spec.init)}" + start
    if isinstance(spec, MulRec):
        return f"mulrec exponents={nums(spec.exponents)} init={nums(spec.init)}" + start
    raise TypeError(f"unknown parameter spec {spec!r}")


def format_map(m) -> str:
    lines: List[str] = [f'map "{m.name}" {{', f"  kind: {m.arity}", f"  forward: {format_rule(m.forward)}"]
    if not m.backward_derived:
        lines.append(f"  backward: {format_rule(m.backward)}")
    for name in sorted(m.params):
        lines.append(f"  param {name}: {format_param(m.params[name])}")
    lines.append("}")
    return "\n".join(lines) + "\n"
