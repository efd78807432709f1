"""Expression trees for map rules, parameter specs and probe seeds."""

from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, Union

VARIABLES = frozenset({"x", "y", "X", "Y"})


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Param:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Ast"


@dataclass(frozen=True)
class BinOp:
    op: str
    lhs: "Ast"
    rhs: "Ast"


@dataclass(frozen=True)
class Pow:
    base: "Ast"
    exponent: int


Ast = Union[Num, Var, Param, Neg, BinOp, Pow]


def names(node: Ast, kind=Param) -> FrozenSet[str]:
    """Names of all ``kind`` leaves (Param or Var) in the tree."""
    if isinstance(node, kind):
        return frozenset({node.name})
    if isinstance(node, Neg):
        return names(node.operand, kind)
    if isinstance(node, BinOp):
        return names(node.lhs, kind) | names(node.rhs, kind)
    if isinstance(node, Pow):
        return names(node.base, kind)
    return frozenset()


def ident(name: str) -> Ast:
    return Var(name) if name in VARIABLES else Param(name)


def substitute(node: Ast, mapping) -> Ast:
    """Replace Var/Param leaves whose name is in ``mapping`` by the mapped trees."""
    if isinstance(node, (Var, Param)):
        return mapping.get(node.name, node)
    if isinstance(node, Neg):
        return Neg(substitute(node.operand, mapping))
    if isinstance(node, BinOp):
        return BinOp(node.op, substitute(node.lhs, mapping), substitute(node.rhs, mapping))
    if isinstance(node, Pow):
        return Pow(substitute(node.base, mapping), node.exponent)
    return node
