"""Tokenizer and polynomial-expression AST shared by the library and the CLI.

Grammar (``^`` binds tightest, then unary minus, then ``*``/``/``, then
binary ``+``/``-``; all binary operators are left-associative)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | power
    power  := atom ('^' INT)?
    atom   := INT | NAME | '(' expr ')'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union


class ParseError(ValueError):
    def __init__(self, line: int, col: int, expected: str, found: str = ""):
        self.line, self.col, self.expected, self.found = line, col, expected, found
        msg = f"line {line}, col {col}: expected {expected}"
        if found:
            msg += f", found {found!r}"
        super().__init__(msg)


@dataclass(frozen=True)
class Token:
    kind: str  # INT, NAME, OP, EOF
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>\.\.|[-+*/^()\[\]{},;=])"
)


def tokenize(text: str) -> list[Token]:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if not m:
            raise ParseError(line, col, "a token", text[pos])
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "int":
            out.append(Token("INT", m.group(), line, col))
        elif kind == "name":
            out.append(Token("NAME", m.group(), line, col))
        elif kind == "op":
            out.append(Token("OP", m.group(), line, col))
        pos = m.end()
    out.append(Token("EOF", "", line, pos - line_start + 1))
    return out


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # + - * /
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exp: int


Expr = Union[Num, Var, Neg, BinOp, Pow]

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}
_NEG_PREC = 3
_POW_PREC = 4


def _prec(e: Expr) -> int:
    if isinstance(e, BinOp):
        return _PREC[e.op]
    if isinstance(e, Neg):
        return _NEG_PREC
    if isinstance(e, Pow):
        return _POW_PREC
    return 5


def render(e: Expr) -> str:
    """Text that parses back to the same AST."""
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Neg):
        inner = render(e.operand)
        if _prec(e.operand) < _NEG_PREC or isinstance(e.operand, Neg):
            inner = f"({inner})"
        return "-" + inner
    if isinstance(e, Pow):
        inner = render(e.base)
        if _prec(e.base) <= _POW_PREC:
            inner = f"({inner})"
        return f"{inner}^{e.exp}"
    p = _PREC[e.op]
    left, right = render(e.left), render(e.right)
    if _prec(e.left) < p:
        left = f"({left})"
    if _prec(e.right) <= p:
        right = f"({right})"
    sep = " " if p == 1 else ""
    return f"{left}{sep}{e.op}{sep}{right}"


class TokenStream:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.peek()
        self.pos += 1
        return tok

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok.kind in ("OP", "NAME") and tok.text == text

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.pos += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if not self.at(text):
            raise ParseError(tok.line, tok.col, repr(text), tok.text or "end of input")
        return self.next()

    def expect_kind(self, kind: str, what: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(tok.line, tok.col, what, tok.text or "end of input")
        return self.next()


def parse_expr(ts: TokenStream) -> Expr:
    left = _parse_term(ts)
    while ts.at("+") or ts.at("-"):
        op = ts.next().text
        left = BinOp(op, left, _parse_term(ts))
    return left


def _parse_term(ts):
    left = _parse_factor(ts)
    while ts.at("*") or ts.at("/"):
        op = ts.next().text
        left = BinOp(op, left, _parse_factor(ts))
    return left


def _parse_factor(ts):
    if ts.accept("-"):
        return Neg(_parse_factor(ts))
    return _parse_power(ts)


def _parse_power(ts):
    base = _parse_atom(ts)
    if ts.accept("^"):
        tok = ts.expect_kind("INT", "an integer exponent")
        return Pow(base, int(tok.text))
    return base


def _parse_atom(ts):
    tok = ts.peek()
    if tok.kind == "INT":
        ts.next()
        return Num(int(tok.text))
    if tok.kind == "NAME":
        ts.next()
        return Var(tok.text)
    if ts.accept("("):
        e = parse_expr(ts)
        ts.expect(")")
        return e
    raise ParseError(tok.line, tok.col, "an expression", tok.text or "end of input")


def parse(text: str) -> Expr:
    ts = TokenStream(tokenize(text))
    e = parse_expr(ts)
    tok = ts.peek()
    if tok.kind != "EOF":
        raise ParseError(tok.line, tok.col, "end of expression", tok.text)
    return e


def evaluate(e: Expr, const, var, inverse=None):
    """Fold ``e`` with ``const(int)``, ``var(name)`` and the operand type's operators.

    ``inverse`` maps a value to its multiplicative inverse; division is
    rejected when it is None.
    """
    if isinstance(e, Num):
        return const(e.value)
    if isinstance(e, Var):
        return var(e.name)
    if isinstance(e, Neg):
        return -evaluate(e.operand, const, var, inverse)
    if isinstance(e, Pow):
        return evaluate(e.base, const, var, inverse) ** e.exp
    a = evaluate(e.left, const, var, inverse)
    b = evaluate(e.right, const, var, inverse)
    if e.op == "+":
        return a + b
    if e.op == "-":
        return a - b
    if e.op == "*":
        return a * b
    if inverse is None:
        raise ValueError("division is not available in this ring")
    return a * inverse(b)
