from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weylsum.errors import ExprSyntaxError, SpaceMismatch
from weylsum.exprparse import BinOp, Chern, ElemSym, Num, Pow, PowerSum, Var, compile, compile_text, parse, render
from weylsum.grassmann import grassmannian
from weylsum.localize import make_space
from weylsum.polyalg import Polynomial
from weylsum.rootsys import build_root_system, subsystem


def test_parse_power_of_chern_class():
    assert parse("c1(S)^2") == Pow(Chern(1, "S"), 2)


def test_parse_product():
    assert parse("e2(y[1..2]) * y3") == BinOp("*", ElemSym(2, 1, 2), Var(3))


def test_unbalanced_parenthesis_column():
    with pytest.raises(ExprSyntaxError) as exc:
        parse("c1(S")
    assert exc.value.column == 5 and exc.value.line == 1
    assert "column 5" in str(exc.value)


def test_error_position_on_later_line():
    with pytest.raises(ExprSyntaxError) as exc:
        parse("y1 +\n  y2 ^ ")
    assert (exc.value.line, exc.value.column) == (2, 8)  # end of input


@pytest.mark.parametrize(
    "text",
    ["y1^-2", "y1^1/2", "-y1", "y1 * -y2", "c1(T)", "e2(y[1..])", "q1", "y1 $ y2", "", "()", "y1 y2", "3/0", "y1^"],
)
def test_syntax_errors(text):
    with pytest.raises(ExprSyntaxError):
        parse(text)


def test_negative_literal():
    assert parse("-3") == Num(Fraction(-3))
    assert parse("-3/4 * y1") == BinOp("*", Num(Fraction(-3, 4)), Var(1))
    assert parse("y1 - 3") == BinOp("-", Var(1), Num(Fraction(3)))
    assert parse("y1 + -3") == BinOp("+", Var(1), Num(Fraction(-3)))


def test_whitespace_insignificant():
    assert parse(" p2 ( y [ 1 .. 3 ] ) ") == parse("p2(y[1..3])") == PowerSum(2, 1, 3)


@pytest.mark.parametrize(
    "text,expected",
    [
        ("y1 + y2 * y3", "(y1 + (y2 * y3))"),
        ("y1 * y2 ^ 2", "(y1 * (y2)^2)"),
        ("y1 - y2 - y3", "((y1 - y2) - y3)"),
        ("y1 - y2 + y3", "((y1 - y2) + y3)"),
        ("(y1 + y2) ^ 2 * y3", "(((y1 + y2))^2 * y3)"),
        ("2 * y1 ^ 3 + 1", "((2 * (y1)^3) + 1)"),
    ],
)
def test_precedence(text, expected):
    assert render(parse(text)) == expected


def test_left_associative_subtraction_value():
    sp = grassmannian(2, 4)
    assert compile_text("y1 - y2 - y3", sp) == compile_text("y1 - (y2 + y3)", sp)


# -- round trip ----------------------------------------------------------

leaves = st.one_of(
    st.fractions(min_value=-20, max_value=20, max_denominator=9).map(Num),
    st.builds(Chern, st.integers(0, 3), st.sampled_from("SQ")),
    st.builds(lambda r, a, b: ElemSym(r, min(a, b), max(a, b)), st.integers(0, 4), st.integers(1, 4), st.integers(1, 4)),
    st.builds(lambda r, a, b: PowerSum(r, min(a, b), max(a, b)), st.integers(0, 4), st.integers(1, 4), st.integers(1, 4)),
    st.builds(Var, st.integers(1, 4)),
)
trees = st.recursive(
    leaves,
    lambda sub: st.one_of(
        st.builds(BinOp, st.sampled_from("+-*"), sub, sub),
        st.builds(Pow, sub, st.integers(0, 4)),
    ),
    max_leaves=10,
)


@settings(max_examples=300, deadline=None)
@given(trees)
def test_render_parse_round_trip(tree):
    assert parse(render(tree)) == tree


# -- compile -------------------------------------------------------------

def y(i, n):
    return Polynomial.variable(i - 1, n, "y")


def test_compile_examples():
    assert compile(parse("c1(S)^2"), grassmannian(1, 3)) == y(1, 3) ** 2
    assert compile_text("e0(y[1..3])", grassmannian(1, 3)) == Polynomial.one(3, "y")
    assert compile_text("c2(S)", grassmannian(2, 4)) == y(1, 4) * y(2, 4)


def test_compile_on_plain_space():
    g = build_root_system("B", 3)
    sp = make_space(g, subsystem(g, ()))
    assert compile_text("p2(y[1..3]) - 1/2", sp) == y(1, 3) ** 2 + y(2, 3) ** 2 + y(3, 3) ** 2 - Fraction(1, 2)
    with pytest.raises(SpaceMismatch):
        compile_text("c1(S)", sp)
    with pytest.raises(SpaceMismatch):
        compile_text("y4", sp)
    with pytest.raises(SpaceMismatch):
        compile_text("e1(y[2..5])", sp)
    with pytest.raises(SpaceMismatch):
        compile_text("e1(y[3..2])", sp)


def test_compile_recognizes_grassmannian_space():
    g = build_root_system("A", 4)
    sp = make_space(g, subsystem(g, {1, 3}))
    assert compile_text("c1(Q)", sp) == y(3, 4) + y(4, 4)


@settings(max_examples=150, deadline=None)
@given(trees, trees, st.sampled_from("+*-"))
def test_compile_is_homomorphism(a, b, op):
    sp = grassmannian(2, 4)
    try:
        fa, fb = compile(a, sp), compile(b, sp)
    except ValueError:
        return  # out-of-range Chern degree
    got = compile(BinOp(op, a, b), sp)
    expected = fa + fb if op == "+" else fa * fb if op == "*" else fa - fb
    assert got == expected
