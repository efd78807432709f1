"""Mapfile language: tokenizer, expression parser and pretty-printer."""

from .ast import Ast, BinOp, Neg, Num, Param, Pow, Var
from .parser import parse_expr, parse_mapfile, parse_probe, parse_rule
from .printer import format_expr, format_map
from .tokenizer import Token, tokenize

__all__ = [
    "Ast",
    "BinOp",
    "Neg",
    "Num",
    "Param",
    "Pow",
    "Token",
    "Var",
    "format_expr",
    "format_map",
    "parse_expr",
    "parse_mapfile",
    "parse_probe",
    "parse_rule",
    "tokenize",
]
