"""A small language for rational expressions in z1..zn and their conjugates.

Grammar::

    expr   := term (("+"|"-") term)*
    term   := unary (("*"|"/") unary)*
    unary  := "-" unary | factor
    factor := base ("^" ["-"] integer)?
    base   := number | "i" | coord | "conj" "(" expr ")" | "abs2" "(" expr ")" | "(" expr ")"
    coord  := "z" positive-integer

``^`` binds tighter than unary minus, so ``-z1^2`` is ``-(z1^2)``.
Trees are immutable and compare structurally.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .errors import CoordinateIndexError, ExponentBoundError, ExpressionSyntaxError

MAX_EXPONENT = 16


@dataclass(frozen=True)
class Const:
    value: complex


@dataclass(frozen=True)
class Coord:
    index: int  # 1-based


@dataclass(frozen=True)
class Neg:
    arg: "Expression"


@dataclass(frozen=True)
class Conj:
    arg: "Expression"


@dataclass(frozen=True)
class Abs2:
    arg: "Expression"


@dataclass(frozen=True)
class Add:
    left: "Expression"
    right: "Expression"


@dataclass(frozen=True)
class Sub:
    left: "Expression"
    right: "Expression"


@dataclass(frozen=True)
class Mul:
    left: "Expression"
    right: "Expression"


@dataclass(frozen=True)
class Div:
    left: "Expression"
    right: "Expression"


@dataclass(frozen=True)
class Pow:
    base: "Expression"
    exponent: int


Expression = Union[Const, Coord, Neg, Conj, Abs2, Add, Sub, Mul, Div, Pow]
BINARY = (Add, Sub, Mul, Div)
UNARY = (Neg, Conj, Abs2)

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<coord>z(?P<cidx>\d+))
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", _offset(text, pos))
        kind = m.lastgroup
        if kind == "cidx":
            kind = "coord"
        if kind != "ws":
            tokens.append((kind, m.group(0), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def _offset(text, pos):
    return len(text[:pos].encode("utf-8"))


class _Parser:
    def __init__(self, text, n):
        self.text = text
        self.n = n
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None, cls=ExpressionSyntaxError):
        tok = tok or self.peek()
        return cls(message, _offset(self.text, tok[2]))

    def expect(self, value):
        tok = self.peek()
        if tok[1] != value or tok[0] not in ("op",):
            raise self.error(f"expected {value!r}, found {tok[1] or 'end of input'!r}")
        return self.advance()

    def parse(self):
        node = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected token {self.peek()[1]!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.advance()[1]
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.advance()[1]
            rhs = self.unary()
            node = Mul(node, rhs) if op == "*" else Div(node, rhs)
        return node

    def unary(self):
        if self.peek() == ("op", "-", self.peek()[2]):
            self.advance()
            return Neg(self.unary())
        return self.factor()

    def factor(self):
        node = self.base()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.advance()
            sign = 1
            if self.peek()[0] == "op" and self.peek()[1] == "-":
                self.advance()
                sign = -1
            tok = self.peek()
            if tok[0] != "number" or not tok[1].isdigit():
                raise self.error("exponent must be an integer literal")
            self.advance()
            exponent = sign * int(tok[1])
            if abs(exponent) > MAX_EXPONENT:
                raise self.error(
                    f"exponent {exponent} exceeds bound {MAX_EXPONENT}", tok, ExponentBoundError
                )
            node = Pow(node, exponent)
        return node

    def base(self):
        tok = self.peek()
        kind, value, _ = tok
        if kind == "number":
            self.advance()
            return Const(complex(float(value)))
        if kind == "coord":
            self.advance()
            k = int(value[1:])
            if not 1 <= k <= self.n:
                raise self.error(
                    f"coordinate {value} out of range for dimension {self.n}", tok, CoordinateIndexError
                )
            return Coord(k)
        if kind == "name":
            self.advance()
            if value == "i":
                return Const(1j)
            if value in ("conj", "abs2"):
                self.expect("(")
                inner = self.expr()
                self.expect(")")
                return Conj(inner) if value == "conj" else Abs2(inner)
            raise self.error(f"unknown name {value!r}", tok)
        if kind == "op" and value == "(":
            self.advance()
            inner = self.expr()
            self.expect(")")
            return inner
        raise self.error(f"unexpected {value or 'end of input'!r}")


def parse(text: str, n: int) -> Expression:
    """Parse ``text`` into a tree over the coordinates z1..zn."""
    if n < 1:
        raise ValueError("chart dimension must be >= 1")
    if not text or not text.strip():
        raise ExpressionSyntaxError("empty expression", 0)
    return _Parser(text, n).parse()


def _const_str(c: complex) -> str:
    if c == 1j:
        return "i"
    if c.imag == 0.0 and c.real >= 0.0:
        return repr(c.real)
    if c.imag == 0.0:
        return f"(-{repr(-c.real)})"
    return f"({repr(c.real)} + {repr(c.imag)}*i)"


def to_string(e: Expression) -> str:
    """Fully parenthesised text; ``parse(to_string(e))`` rebuilds ``e`` for parsed trees."""
    if isinstance(e, Const):
        return _const_str(e.value)
    if isinstance(e, Coord):
        return f"z{e.index}"
    if isinstance(e, Neg):
        return f"(-{to_string(e.arg)})"
    if isinstance(e, Conj):
        return f"conj({to_string(e.arg)})"
    if isinstance(e, Abs2):
        return f"abs2({to_string(e.arg)})"
    if isinstance(e, Pow):
        return f"({to_string(e.base)}^{e.exponent})"
    op = {Add: "+", Sub: "-", Mul: "*", Div: "/"}[type(e)]
    return f"({to_string(e.left)} {op} {to_string(e.right)})"


def max_coordinate(e: Expression) -> int:
    """Largest coordinate index referenced (0 for constants)."""
    if isinstance(e, Coord):
        return e.index
    if isinstance(e, Const):
        return 0
    if isinstance(e, UNARY):
        return max_coordinate(e.arg)
    if isinstance(e, Pow):
        return max_coordinate(e.base)
    return max(max_coordinate(e.left), max_coordinate(e.right))


def substitute(e: Expression, components) -> Expression:
    """Replace each ``Coord(k)`` by ``components[k-1]``.

    Conjugates follow automatically: ``conj(zk)`` becomes ``conj(components[k-1])``.
    """
    if isinstance(e, Coord):
        return components[e.index - 1]
    if isinstance(e, Const):
        return e
    if isinstance(e, UNARY):
        return type(e)(substitute(e.arg, components))
    if isinstance(e, Pow):
        return Pow(substitute(e.base, components), e.exponent)
    return type(e)(substitute(e.left, components), substitute(e.right, components))


def evaluate(e: Expression, z) -> complex:
    """Plain complex value of ``e`` at the point ``z`` (no derivatives)."""
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Coord):
        return complex(z[e.index - 1])
    if isinstance(e, Neg):
        return -evaluate(e.arg, z)
    if isinstance(e, Conj):
        return evaluate(e.arg, z).conjugate()
    if isinstance(e, Abs2):
        v = evaluate(e.arg, z)
        return v * v.conjugate()
    if isinstance(e, Pow):
        return evaluate(e.base, z) ** e.exponent
    a, b = evaluate(e.left, z), evaluate(e.right, z)
    if isinstance(e, Add):
        return a + b
    if isinstance(e, Sub):
        return a - b
    if isinstance(e, Mul):
        return a * b
    return a / b


# Convenience constructors used by catalog and test-function builders.

def const(c) -> Const:
    return Const(complex(c))


def sum_of(terms) -> Expression:
    terms = list(terms)
    if not terms:
        return Const(0j)
    node = terms[0]
    for t in terms[1:]:
        node = Add(node, t)
    return node
