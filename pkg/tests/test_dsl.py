import os
import random
from fractions import Fraction

import pytest

from singan.catalog import load_maps
from singan.dsl import BinOp, Neg, Num, Param, Pow, Var, format_expr, format_map, parse_mapfile, parse_probe, parse_rule
from singan.dsl.tokenizer import tokenize
from singan.errors import ParseError, SemanticError
from singan.maps.params import LinRec

FUZZ_CASES = int(os.getenv("SINGAN_FUZZ_CASES", "2000"))
FUZZ_SIZE = int(os.getenv("SINGAN_FUZZ_SIZE", "256"))
FUZZ_ALPHABET = 'xyXYacn0123456789+-*/^(),=[]{}:;# \n"mapkindforwardbackwardparamconstlinrec@.'

GOLDEN = """
# comment line
map "golden" {
    kind: scalar
    forward: y*(x^2 - 1)/x
}
"""


def test_tokenize_positions():
    tokens = tokenize("x +\n  y^2")
    assert [(tok.lexeme, tok.line, tok.column) for tok in tokens] == [
        ("x", 1, 1),
        ("+", 1, 3),
        ("y", 2, 3),
        ("^", 2, 4),
        ("2", 2, 5),
        ("", 2, 6),
    ]


def test_precedence_and_folding():
    (node,) = parse_rule("a + b*x^2 - y")
    assert node == BinOp(
        "-",
        BinOp("+", Param("a"), BinOp("*", Param("b"), Pow(Var("x"), 2))),
        Var("y"),
    )
    assert parse_rule("3/2") == (Num(Fraction(3, 2)),)
    assert parse_rule("-x^2") == (Neg(Pow(Var("x"), 2)),)
    assert parse_rule("x^-2") == (Pow(Var("x"), -2),)


def test_pair_rule():
    rule = parse_rule("(Y, X/Y)")
    assert rule == (Var("Y"), BinOp("/", Var("X"), Var("Y")))


def test_error_position_in_expression():
    with pytest.raises(ParseError) as info:
        parse_rule("x + * y")
    assert (info.value.line, info.value.column) == (1, 5)
    assert "'*'" in info.value.message


def test_error_position_in_mapfile():
    text = 'map "m" {\n  kind: scalar\n  forward: x +\n}\n'
    with pytest.raises(ParseError) as info:
        parse_mapfile(text)
    assert (info.value.line, info.value.column) == (4, 1)
    assert info.value.snippet == "}"
    assert info.value.render().endswith("^")


def test_illegal_character_and_unterminated_string():
    with pytest.raises(ParseError) as info:
        parse_rule("x $ y")
    assert info.value.column == 3
    with pytest.raises(ParseError):
        parse_mapfile('map "open {')


def test_non_integer_and_huge_exponents_are_rejected():
    with pytest.raises(ParseError):
        parse_rule("x^(1/2)")
    with pytest.raises(ParseError):
        parse_rule("x^1000")
    with pytest.raises(ParseError):
        parse_rule("1/0")


def test_semantic_errors():
    with pytest.raises(SemanticError, match="undeclared parameter 'b'"):
        parse_mapfile('map "m" { kind: scalar forward: b*x - y }')
    with pytest.raises(SemanticError, match="not allowed"):
        parse_mapfile('map "m" { kind: scalar forward: X - y }')
    with pytest.raises(SemanticError, match="explicit backward"):
        parse_mapfile('map "m" { kind: pair forward: (Y, X) }')
    with pytest.raises(SemanticError, match="not Möbius"):
        parse_mapfile('map "m" { kind: scalar forward: x - y^2 }')
    with pytest.raises(SemanticError, match="duplicate map name"):
        parse_mapfile('map "m" { kind: scalar forward: x - y }\nmap "m" { kind: scalar forward: x - y }')


def test_backward_rule_is_derived_for_mobius_rules():
    (m,) = parse_mapfile(GOLDEN)
    assert m.backward_derived
    assert m.name == "golden"
    assert m.arity == "scalar"


def test_param_specs():
    text = 'map "m" { kind: scalar forward: a*x - y param a: linrec coeffs=[2, -1] init=[1, 2] start=3 }'
    (m,) = parse_mapfile(text)
    assert m.params["a"] == LinRec((2, -1), (1, 2), 3)
    with pytest.raises(SemanticError):
        parse_mapfile('map "m" { kind: scalar forward: a*x - y param a: linrec coeffs=[2, -1] init=[1] }')


def test_probe_syntax():
    components, index = parse_probe("c, 1/eps @ 0")
    assert components == (Param("c"), BinOp("/", Num(Fraction(1)), Param("eps")))
    assert index == 0
    assert parse_probe("c, eps")[1] == 1
    with pytest.raises(ParseError):
        parse_probe("c, x")
    with pytest.raises(ParseError):
        parse_probe("c")


@pytest.mark.parametrize(
    "text",
    [
        "x^2/y",
        "-x^2",
        "(-x)^2",
        "x^(-2)",
        "a*(x^2 - 1)/(x + y) - x",
        "x - (y - 1)",
        "x/(y/2)",
        "x*(3/2) - y",
        "-(x + y)*(-3)",
        "2*a*x/(x^2 - 1) - y",
    ],
)
def test_printer_round_trip(text):
    (node,) = parse_rule(text)
    assert parse_rule(format_expr(node)) == (node,)


def test_catalog_maps_round_trip_through_the_printer():
    for m in load_maps().values():
        (again,) = parse_mapfile(format_map(m))
        assert again.forward == m.forward
        assert again.backward == m.backward
        assert again.params == m.params
        assert again.backward_derived == m.backward_derived


def test_derived_backward_rule_is_not_printed():
    assert "backward:" not in format_map(load_maps()["golden"])
    assert "backward:" in format_map(load_maps()["eq3-pair"])


def test_fuzz_never_crashes():
    rng = random.Random(1)
    for _ in range(FUZZ_CASES):
        size = rng.randint(0, FUZZ_SIZE)
        text = "".join(rng.choice(FUZZ_ALPHABET) for _ in range(size))
        for parse in (parse_rule, parse_mapfile, parse_probe):
            try:
                parse(text)
            except ParseError:
                pass


def corruptions(text: str):
    """Every token of ``text`` replaced in turn by a character that cannot appear there."""
    for token in tokenize(text)[:-1]:
        end = token.offset + len(token.lexeme) + (2 if token.kind == "string" else 0)
        for replacement in ("=", "$"):
            yield token, text[: token.offset] + replacement + text[end:]


def test_error_is_reported_at_the_corrupted_token():
    for token, text in corruptions(GOLDEN):
        with pytest.raises(ParseError) as info:
            parse_mapfile(text)
        assert (info.value.line, info.value.column) == (token.line, token.column), text


def test_deep_nesting_is_a_parse_error():
    with pytest.raises(ParseError, match="nested too deeply"):
        parse_rule("(" * 4000 + "x" + ")" * 4000)


@pytest.mark.parametrize("rule", ["1/(x - x)", "y/(x - x)", "0*y/(x - x) + x"])
def test_rules_undefined_for_every_state_are_semantic_errors(rule):
    text = f'map "m" {{\n  kind: scalar\n  forward: {rule}\n}}\n'
    with pytest.raises(SemanticError, match="undefined for every state") as info:
        parse_mapfile(text)
    assert (info.value.line, info.value.column) == (3, 3)


def test_explicit_backward_rule_must_be_defined():
    with pytest.raises(SemanticError, match="backward rule is undefined"):
        parse_mapfile('map "p" { kind: pair forward: (Y, X) backward: (Y, X/(Y - Y)) }')


def test_rule_without_y_cannot_be_inverted():
    with pytest.raises(SemanticError, match="does not depend on y"):
        parse_mapfile('map "m" { kind: scalar forward: x + y - y }')
