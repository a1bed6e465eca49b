"""A small language for characteristic-class polynomials.

Grammar (whitespace is insignificant)::

    expr   := term (("+" | "-") term)*
    term   := factor ("*" factor)*
    factor := base ("^" NAT)?
    base   := RATIONAL | symbol | "(" expr ")"
    symbol := "c" NAT "(" ("S" | "Q") ")"
            | ("e" | "p") NAT "(" range ")"
            | "y" NAT
    range  := "y[" NAT ".." NAT "]"
    RATIONAL := "-"? NAT ("/" NAT)?

There is no unary minus: a leading ``-`` is only allowed as the sign of a
rational literal.  Variable indices are 1-based.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ExprSyntaxError, SpaceMismatch
from .polyalg import Polynomial, elem_sym, format_rational, power_sum


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Chern:
    r: int
    bundle: str


@dataclass(frozen=True)
class ElemSym:
    r: int
    lo: int
    hi: int


@dataclass(frozen=True)
class PowerSum:
    r: int
    lo: int
    hi: int


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "ClassExpr"
    right: "ClassExpr"


@dataclass(frozen=True)
class Pow:
    base: "ClassExpr"
    exponent: int


ClassExpr = Union[Num, Chern, ElemSym, PowerSum, Var, BinOp, Pow]

_TOKEN = re.compile(r"\s*(?:(\d+)|(\.\.)|([A-Za-z])|([-+*^()/\[\]]))")


@dataclass
class _Tok:
    kind: str  # "nat", "name", "op", "end"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            line, col = _location(text, pos)
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(_Tok("nat", m.group(1), start))
        elif m.group(2):
            toks.append(_Tok("op", "..", start))
        elif m.group(3):
            toks.append(_Tok("name", m.group(3), start))
        else:
            toks.append(_Tok("op", m.group(4), start))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


def _location(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        line, col = _location(self.text, tok.pos)
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ExprSyntaxError(f"{msg}, found {found}", line, col)

    def take(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> _Tok:
        tok = self.peek()
        if tok.text != text or tok.kind == "nat":
            self.error(f"expected {text!r}")
        return self.take()

    def nat(self) -> int:
        tok = self.peek()
        if tok.kind != "nat":
            self.error("expected a natural number")
        return int(self.take().text)

    def expr(self) -> ClassExpr:
        node = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> ClassExpr:
        node = self.factor()
        while self.peek().kind == "op" and self.peek().text == "*":
            self.take()
            node = BinOp("*", node, self.factor())
        return node

    def factor(self) -> ClassExpr:
        node = self.base()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            tok = self.peek()
            if tok.kind == "op" and tok.text == "-":
                self.error("negative exponent")
            n = self.nat()
            if self.peek().kind == "op" and self.peek().text == "/":
                self.error("fractional exponent")
            node = Pow(node, n)
        return node

    def base(self) -> ClassExpr:
        tok = self.peek()
        if tok.kind == "nat" or (tok.kind == "op" and tok.text == "-"):
            return self.rational()
        if tok.kind == "op" and tok.text == "(":
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind == "name":
            return self.symbol()
        self.error("expected a number, a class symbol or '('")

    def rational(self) -> Num:
        sign = 1
        if self.peek().text == "-":
            self.take()
            sign = -1
            if self.peek().kind != "nat":
                self.error("unary minus is only allowed on a numeric literal")
        num = self.nat()
        den = 1
        if self.peek().kind == "op" and self.peek().text == "/":
            self.take()
            tok = self.peek()
            den = self.nat()
            if den == 0:
                self.error("zero denominator", tok)
        return Num(Fraction(sign * num, den))

    def symbol(self) -> ClassExpr:
        tok = self.take()
        name = tok.text
        if name == "y":
            return Var(self.nat())
        if name == "c":
            r = self.nat()
            self.expect("(")
            b = self.peek()
            if b.kind != "name" or b.text not in ("S", "Q"):
                self.error("expected bundle 'S' or 'Q'")
            self.take()
            self.expect(")")
            return Chern(r, b.text)
        if name in ("e", "p"):
            r = self.nat()
            self.expect("(")
            y = self.peek()
            if y.kind != "name" or y.text != "y":
                self.error("expected a range y[a..b]")
            self.take()
            self.expect("[")
            lo = self.nat()
            self.expect("..")
            hi = self.nat()
            self.expect("]")
            self.expect(")")
            return (ElemSym if name == "e" else PowerSum)(r, lo, hi)
        self.error("unknown symbol", tok)


def parse(text: str) -> ClassExpr:
    p = _Parser(text)
    node = p.expr()
    if p.peek().kind != "end":
        p.error("unexpected trailing input")
    return node


def render(node: ClassExpr) -> str:
    """Fully parenthesized text that parses back to the same tree."""
    if isinstance(node, Num):
        return format_rational(node.value)
    if isinstance(node, Chern):
        return f"c{node.r}({node.bundle})"
    if isinstance(node, ElemSym):
        return f"e{node.r}(y[{node.lo}..{node.hi}])"
    if isinstance(node, PowerSum):
        return f"p{node.r}(y[{node.lo}..{node.hi}])"
    if isinstance(node, Var):
        return f"y{node.index}"
    if isinstance(node, Pow):
        return f"({render(node.base)})^{node.exponent}"
    if isinstance(node, BinOp):
        return f"({render(node.left)} {node.op} {render(node.right)})"
    raise TypeError(f"not an expression node: {node!r}")


def _range(lo: int, hi: int, rank: int) -> range:
    if not 1 <= lo <= hi <= rank:
        raise SpaceMismatch(f"range y[{lo}..{hi}] outside 1..{rank}")
    return range(lo - 1, hi)


def compile(node: ClassExpr, space) -> Polynomial:
    """Build the y-polynomial of an expression on a space (or Grassmannian)."""
    from .grassmann import GrassmannSpec, chern, require_grassmannian

    rank = space.rank

    def go(n):
        if isinstance(n, Num):
            return Polynomial.constant(n.value, rank, "y")
        if isinstance(n, Var):
            if not 1 <= n.index <= rank:
                raise SpaceMismatch(f"y{n.index} outside y1..y{rank}")
            return Polynomial.variable(n.index - 1, rank, "y")
        if isinstance(n, ElemSym):
            return elem_sym(rank, _range(n.lo, n.hi, rank), n.r, "y")
        if isinstance(n, PowerSum):
            return power_sum(rank, _range(n.lo, n.hi, rank), n.r, "y")
        if isinstance(n, Chern):
            spec = require_grassmannian(space)
            return chern(n.bundle, n.r, spec)
        if isinstance(n, Pow):
            return go(n.base) ** n.exponent
        if isinstance(n, BinOp):
            a, b = go(n.left), go(n.right)
            return a + b if n.op == "+" else a - b if n.op == "-" else a * b
        raise TypeError(f"not an expression node: {n!r}")

    if isinstance(space, GrassmannSpec):
        rank = space.n
    return go(node)


def compile_text(text: str, space) -> Polynomial:
    return compile(parse(text), space)
