"""
Precedence-climbing parser for rule expressions and mapfiles.

Binding strength, tightest first: ``^`` (right-associative, integer
exponent), unary ``-``, ``*`` and ``/``, ``+`` and ``-``. Constant
subtrees are folded as they are built so ``3/2`` becomes one literal.
"""

import logging
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from ..errors import NotMobius, ParamRangeError, ParseError, SemanticError
from .ast import VARIABLES, Ast, BinOp, Neg, Num, Pow, Var, ident, names
from .tokenizer import Token, line_of, tokenize

logger = logging.getLogger(__name__)

BINARY = {"+": 10, "-": 10, "*": 20, "/": 20}
MAX_DEPTH = 150
MAX_EXPONENT = 256
MAX_FOLD_BITS = 200_000

SCALAR_VARIABLES = frozenset({"x", "y"})
PAIR_VARIABLES = frozenset({"X", "Y"})


def fold(node: Ast) -> Ast:
    """Collapse a node whose operands are all literals into one literal."""
    if isinstance(node, Neg) and isinstance(node.operand, Num):
        return Num(-node.operand.value)
    if isinstance(node, BinOp) and isinstance(node.lhs, Num) and isinstance(node.rhs, Num):
        a, b = node.lhs.value, node.rhs.value
        if node.op == "+":
            return Num(a + b)
        if node.op == "-":
            return Num(a - b)
        if node.op == "*":
            return Num(a * b)
        if b == 0:
            raise ZeroDivisionError("division by zero in constant expression")
        return Num(a / b)
    if isinstance(node, Pow) and isinstance(node.base, Num):
        base = node.base.value
        if base == 0 and node.exponent < 0:
            raise ZeroDivisionError("zero raised to a negative power")
        bits = max(base.numerator.bit_length(), base.denominator.bit_length())
        if bits * abs(node.exponent) > MAX_FOLD_BITS:
            raise OverflowError("constant power too large")
        return Num(base**node.exponent)
    return node


class Parser:
    def __init__(self, text: str, tokens: Optional[List[Token]] = None):
        self.text = text
        self.tokens = tokens if tokens is not None else tokenize(text)
        self.pos = 0
        self.depth = 0
        self.refs: Dict[str, Token] = {}

    # token helpers

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message: str, token: Optional[Token] = None, cls=ParseError) -> ParseError:
        token = token or self.current
        return cls(message, token.line, token.column, line_of(self.text, token.line))

    def describe(self, token: Token) -> str:
        if token.kind == "eof":
            return "end of input"
        if token.kind == "string":
            return f'string "{token.lexeme}"'
        return f"'{token.lexeme}'"

    def check(self, lexeme: str) -> bool:
        token = self.current
        return token.kind in ("symbol", "keyword") and token.lexeme == lexeme

    def accept(self, lexeme: str) -> Optional[Token]:
        if self.check(lexeme):
            token = self.current
            self.pos += 1
            return token
        return None

    def expect(self, lexeme: str) -> Token:
        token = self.accept(lexeme)
        if token is None:
            raise self.error(f"expected '{lexeme}' but found {self.describe(self.current)}")
        return token

    def expect_kind(self, kind: str, what: str) -> Token:
        token = self.current
        if token.kind != kind:
            raise self.error(f"expected {what} but found {self.describe(token)}")
        self.pos += 1
        return token

    def expect_word(self, word: str) -> Token:
        """Match a bare word such as ``coeffs`` that is not a reserved keyword."""
        token = self.current
        if token.kind != "ident" or token.lexeme != word:
            raise self.error(f"expected '{word}' but found {self.describe(token)}")
        self.pos += 1
        return token

    # expressions

    def folded(self, node: Ast, token: Token) -> Ast:
        try:
            return fold(node)
        except (ZeroDivisionError, OverflowError) as exc:
            raise self.error(str(exc), token) from exc

    def expression(self, min_prec: int = 0) -> Ast:
        left = self.unary()
        while self.current.kind == "symbol" and self.current.lexeme in BINARY:
            op_token = self.current
            prec = BINARY[op_token.lexeme]
            if prec < min_prec:
                break
            self.pos += 1
            right = self.expression(prec + 1)
            left = self.folded(BinOp(op_token.lexeme, left, right), op_token)
        return left

    def unary(self) -> Ast:
        self.depth += 1
        try:
            if self.depth > MAX_DEPTH:
                raise self.error("expression nested too deeply")
            token = self.accept("-")
            if token is not None:
                return self.folded(Neg(self.unary()), token)
            return self.power()
        finally:
            self.depth -= 1

    def power(self) -> Ast:
        base = self.primary()
        caret = self.accept("^")
        if caret is None:
            return base
        exponent_token = self.current
        exponent = self.unary()
        if not isinstance(exponent, Num) or exponent.value.denominator != 1:
            raise self.error("non-integer exponent", exponent_token)
        if abs(exponent.value) > MAX_EXPONENT:
            raise self.error(f"exponent magnitude exceeds {MAX_EXPONENT}", exponent_token)
        return self.folded(Pow(base, int(exponent.value)), caret)

    def primary(self) -> Ast:
        token = self.current
        if token.kind == "integer":
            self.pos += 1
            return Num(Fraction(int(token.lexeme)))
        if token.kind == "ident":
            self.pos += 1
            self.refs.setdefault(token.lexeme, token)
            return ident(token.lexeme)
        if self.accept("("):
            inner = self.expression()
            if not self.check(")"):
                raise self.error(f"unbalanced parentheses: expected ')' but found {self.describe(self.current)}")
            self.pos += 1
            return inner
        if token.kind == "eof":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected token {self.describe(token)}")

    def constant(self, what: str) -> Fraction:
        token = self.current
        node = self.expression()
        if not isinstance(node, Num):
            raise self.error(f"{what} must be a constant", token)
        return node.value

    def integer(self, what: str) -> int:
        token = self.current
        value = self.constant(what)
        if value.denominator != 1:
            raise self.error(f"{what} must be an integer", token)
        return int(value)

    def exprspec(self) -> Tuple[Ast, ...]:
        """A single rule, or ``(e1, e2)`` for pair maps (tried first, with backtracking)."""
        if self.check("("):
            mark, refs = self.pos, dict(self.refs)
            self.pos += 1
            try:
                first = self.expression()
            except ParseError:
                first = None
            if first is not None and self.accept(","):
                second = self.expression()
                self.expect(")")
                return (first, second)
            self.pos, self.refs = mark, refs
        return (self.expression(),)

    # mapfile

    def constant_list(self, what: str) -> List[Fraction]:
        self.expect("[")
        values = [self.constant(what)]
        while self.accept(","):
            values.append(self.constant(what))
        self.expect("]")
        return values

    def start_index(self) -> int:
        token = self.current
        if token.kind == "ident" and token.lexeme == "start":
            self.pos += 1
            self.expect("=")
            return self.integer("start index")
        return 0

    def paramspec(self):
        from ..maps.params import Constant, Explicit, LinRec, MulRec

        token = self.current
        try:
            if self.accept("const"):
                return Constant(self.constant("const parameter"))
            if self.accept("list"):
                values = self.constant_list("list entry")
                return Explicit(tuple(values), self.start_index())
            if self.accept("linrec"):
                self.expect_word("coeffs")
                self.expect("=")
                coeffs = self.constant_list("linrec coefficient")
                self.expect_word("init")
                self.expect("=")
                init = self.constant_list("initial value")
                return LinRec(tuple(coeffs), tuple(init), self.start_index())
            if self.accept("mulrec"):
                self.expect_word("exponents")
                self.expect("=")
                exponents_token = self.current
                exponents = self.constant_list("mulrec exponent")
                if any(e.denominator != 1 for e in exponents):
                    raise self.error("mulrec exponents must be integers", exponents_token)
                self.expect_word("init")
                self.expect("=")
                init = self.constant_list("initial value")
                return MulRec(tuple(int(e) for e in exponents), tuple(init), self.start_index())
        except (ValueError, ParamRangeError) as exc:
            raise self.error(str(exc), token, SemanticError) from exc
        raise self.error(f"expected a parameter spec (const, list, linrec, mulrec) but found {self.describe(token)}")

    def mapblock(self):
        from ..maps.model import MapInstance
        from ..maps.symbolic import invert_rule, is_undefined, to_sympy

        self.expect("map")
        name = self.expect_kind("string", "a quoted map name").lexeme
        open_brace = self.expect("{")
        fields: Dict[str, Token] = {}
        arity: Optional[str] = None
        rules: Dict[str, Tuple[Ast, ...]] = {}
        refs: Dict[str, Dict[str, Token]] = {}
        params = {}
        while not self.check("}"):
            token = self.current
            if self.accept("kind"):
                self.expect(":")
                kind = self.current
                if not (self.accept("scalar") or self.accept("pair")):
                    raise self.error(f"expected 'scalar' or 'pair' but found {self.describe(kind)}")
                if "kind" in fields:
                    raise self.error("duplicate kind field", token, SemanticError)
                fields["kind"], arity = token, kind.lexeme
            elif self.check("forward") or self.check("backward"):
                self.pos += 1
                self.expect(":")
                if token.lexeme in fields:
                    raise self.error(f"duplicate {token.lexeme} rule", token, SemanticError)
                self.refs = {}
                rules[token.lexeme] = self.exprspec()
                refs[token.lexeme] = self.refs
                fields[token.lexeme] = token
            elif self.accept("param"):
                param_token = self.expect_kind("ident", "a parameter name")
                if param_token.lexeme in VARIABLES:
                    raise self.error(f"'{param_token.lexeme}' is a state variable", param_token, SemanticError)
                if param_token.lexeme in params:
                    raise self.error(f"duplicate parameter '{param_token.lexeme}'", param_token, SemanticError)
                self.expect(":")
                params[param_token.lexeme] = self.paramspec()
            elif token.kind == "eof":
                raise self.error("unexpected end of input: map block is not closed")
            else:
                raise self.error(f"expected a field (kind, forward, backward, param) but found {self.describe(token)}")
            self.accept(";")
        self.expect("}")

        if arity is None:
            raise self.error(f'map "{name}" has no kind field', open_brace, SemanticError)
        if "forward" not in rules:
            raise self.error(f'map "{name}" has no forward rule', open_brace, SemanticError)
        expected_len = 1 if arity == "scalar" else 2
        allowed = SCALAR_VARIABLES if arity == "scalar" else PAIR_VARIABLES
        for rule_name, rule in rules.items():
            if len(rule) != expected_len:
                shape = "a single expression" if arity == "scalar" else "a pair (e1, e2)"
                raise self.error(f"{arity} {rule_name} rule must be {shape}", fields[rule_name], SemanticError)
            for var, var_token in refs[rule_name].items():
                if var in VARIABLES and var not in allowed:
                    raise self.error(f"variable '{var}' is not allowed in a {arity} rule", var_token, SemanticError)
                if var not in VARIABLES and var not in params:
                    raise self.error(f"undeclared parameter '{var}' in {rule_name} rule", var_token, SemanticError)
            if any(is_undefined(to_sympy(node)) for node in rule):
                raise self.error(f"{rule_name} rule is undefined for every state", fields[rule_name], SemanticError)

        derived = False
        if "backward" not in rules:
            if arity == "pair":
                raise self.error(
                    f'pair map "{name}" needs an explicit backward rule', fields["forward"], SemanticError
                )
            try:
                rules["backward"] = (invert_rule(rules["forward"][0]),)
            except NotMobius as exc:
                raise self.error(
                    f'forward rule of "{name}" is not Möbius in y ({exc.detail}); write a backward rule',
                    fields["forward"],
                    SemanticError,
                ) from exc
            derived = True
            logger.debug("derived backward rule for %s", name)
        return MapInstance(name, arity, rules["forward"], rules["backward"], params, derived)

    def mapfile(self) -> list:
        maps = []
        seen = set()
        while self.current.kind != "eof":
            token = self.current
            if not self.check("map"):
                raise self.error(f"expected 'map' but found {self.describe(token)}")
            instance = self.mapblock()
            if instance.name in seen:
                raise self.error(f'duplicate map name "{instance.name}"', token, SemanticError)
            seen.add(instance.name)
            maps.append(instance)
        if not maps:
            raise self.error("mapfile contains no map blocks")
        return maps


def parse_expr(tokens, text: str = "") -> Ast:
    """Parse one expression; ``tokens`` may be a token list or raw text."""
    if isinstance(tokens, str):
        text, tokens = tokens, tokenize(tokens)
    parser = Parser(text, tokens)
    node = parser.expression()
    if parser.current.kind != "eof":
        token = parser.current
        if token.lexeme == ")":
            raise parser.error("unbalanced parentheses: unexpected ')'")
        raise parser.error(f"unexpected token {parser.describe(token)}")
    return node


def parse_rule(text: str) -> Tuple[Ast, ...]:
    """Parse a scalar rule or a ``(e1, e2)`` pair rule."""
    parser = Parser(text)
    rule = parser.exprspec()
    if parser.current.kind != "eof":
        raise parser.error(f"unexpected token {parser.describe(parser.current)}")
    return rule


def parse_mapfile(text: str) -> list:
    return Parser(text).mapfile()


def parse_probe(text: str) -> Tuple[Tuple[Ast, ...], int]:
    """
    Parse a probe seed ``e1, e2 @ n0`` (index optional, default 1).

    Seed expressions use the tracker ``c``, the infinitesimal ``eps`` and the
    map's parameter names.
    """
    seed_text, _, index_text = text.partition("@")
    parser = Parser(seed_text)
    components = [parser.expression()]
    while parser.accept(","):
        components.append(parser.expression())
    if parser.current.kind != "eof":
        raise parser.error(f"unexpected token {parser.describe(parser.current)}")
    if len(components) != 2:
        raise parser.error("a probe seed has exactly two components", parser.tokens[0])
    for node in components:
        if names(node, Var):
            raise parser.error("probe seeds may not use state variables", parser.tokens[0])
    index = 1
    if index_text.strip():
        index_parser = Parser(index_text)
        index = index_parser.integer("probe index")
        if index_parser.current.kind != "eof":
            raise index_parser.error(f"unexpected token {index_parser.describe(index_parser.current)}")
    return tuple(components), index
