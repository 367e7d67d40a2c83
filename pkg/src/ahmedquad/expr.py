"""Arithmetic expressions in one variable ``x``.

Grammar (lowest to highest binding)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' unary)?          # right associative: 2^3^2 = 2^9
    atom   := NUMBER | 'x' | 'pi' | 'e' | FUNC '(' expr ')' | '(' expr ')'
    FUNC   := sin | cos | exp | sqrt | atan | abs | log

So ``-x^2`` is ``-(x^2)``. Evaluation works on floats and on numpy arrays;
sqrt of a negative, log of a non-positive, division by zero and any other
non-finite intermediate raise :class:`ExprDomainError`.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from ahmedquad.quad1d import EvaluationError

FUNCTIONS = {
    "sin": np.sin,
    "cos": np.cos,
    "exp": np.exp,
    "sqrt": np.sqrt,
    "atan": np.arctan,
    "abs": np.abs,
    "log": np.log,
}
CONSTANTS = {"pi": math.pi, "e": math.e}


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at offset {pos}")
        self.pos = pos


class ExprDomainError(EvaluationError):
    pass


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expr"


Expr = Union[Num, Var, Const, Neg, BinOp, Call]

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))"
)


def tokenize(src: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(src)
    while pos < n:
        if src[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(src, pos)
        if not m:
            raise ExprSyntaxError(f"unexpected character {src[pos]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.tokens = tokenize(src)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, text, pos = self.take()
        if text != value or kind != "op":
            what = "end of input" if kind == "end" else repr(text)
            raise ExprSyntaxError(f"expected {value!r}, found {what}", pos)

    def parse(self) -> Expr:
        e = self.expr()
        kind, text, pos = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected trailing {text!r}", pos)
        return e

    def expr(self) -> Expr:
        left = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            left = BinOp(op, left, self.term())
        return left

    def term(self) -> Expr:
        left = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            left = BinOp(op, left, self.unary())
        return left

    def unary(self) -> Expr:
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            return BinOp("^", base, self.unary())
        return base

    def atom(self) -> Expr:
        kind, text, pos = self.take()
        if kind == "num":
            v = float(text)
            if not math.isfinite(v):
                raise ExprSyntaxError(f"literal {text!r} overflows", pos)
            return Num(v)
        if kind == "name":
            if text == "x":
                return Var()
            if text in CONSTANTS:
                return Const(text)
            if text in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(text, arg)
            raise ExprSyntaxError(f"unknown identifier {text!r}", pos)
        if (kind, text) == ("op", "("):
            e = self.expr()
            self.expect(")")
            return e
        what = "end of input" if kind == "end" else repr(text)
        raise ExprSyntaxError(f"expected an operand, found {what}", pos)


def parse(src: str) -> Expr:
    if not src or not src.strip():
        raise ExprSyntaxError("empty expression", 0)
    return _Parser(src).parse()


def to_source(e: Expr) -> str:
    """Fully parenthesized text that parses back to the same tree."""
    if isinstance(e, Num):
        return repr(e.value)
    if isinstance(e, Var):
        return "x"
    if isinstance(e, Const):
        return e.name
    if isinstance(e, Neg):
        return f"(-{to_source(e.operand)})"
    if isinstance(e, BinOp):
        return f"({to_source(e.left)}{e.op}{to_source(e.right)})"
    if isinstance(e, Call):
        return f"{e.func}({to_source(e.arg)})"
    raise TypeError(f"not an expression node: {e!r}")


def _check(value, what: str, x):
    if isinstance(value, float):
        if math.isfinite(value):
            return value
        raise ExprDomainError(f"{what} is not finite", float(x))
    if not np.all(np.isfinite(value)):
        raise ExprDomainError(f"{what} is not finite", _first_bad(value, x))
    return value


def _first_bad(value, x):
    v = np.atleast_1d(value)
    xs = np.broadcast_to(np.atleast_1d(x), v.shape)
    bad = np.flatnonzero(~np.isfinite(v))
    return float(xs[bad[0]]) if bad.size else None


def _domain(ok, what: str, x):
    if not np.all(ok):
        raise ExprDomainError(what, _first_bad(np.where(ok, 0.0, np.nan), x))


def compile_expr(e: Expr) -> Callable:
    """Turn the tree into a closure f(x); same operation sequence as ``evaluate``."""
    if isinstance(e, Num):
        v = e.value
        return lambda x: v
    if isinstance(e, Var):
        return lambda x: x
    if isinstance(e, Const):
        v = CONSTANTS[e.name]
        return lambda x: v
    if isinstance(e, Neg):
        f = compile_expr(e.operand)
        return lambda x: -f(x)
    if isinstance(e, BinOp):
        a, b = compile_expr(e.left), compile_expr(e.right)
        op = e.op
        if op == "+":
            return lambda x: _check(a(x) + b(x), "sum", x)
        if op == "-":
            return lambda x: _check(a(x) - b(x), "difference", x)
        if op == "*":
            return lambda x: _check(a(x) * b(x), "product", x)
        if op == "/":
            def div(x):
                num, den = a(x), b(x)
                _domain(np.asarray(den) != 0, "division by zero", x)
                return _check(num / den, "quotient", x)
            return div

        def power(x):
            with np.errstate(all="ignore"):
                r = np.power(np.float64(a(x)), b(x))
            return _check(r, "power", x)
        return power
    if isinstance(e, Call):
        f = compile_expr(e.arg)
        fn = FUNCTIONS[e.func]
        name = e.func
        if name == "sqrt":
            def call(x):
                u = f(x)
                _domain(np.asarray(u) >= 0, "sqrt of a negative number", x)
                return fn(u)
        elif name == "log":
            def call(x):
                u = f(x)
                _domain(np.asarray(u) > 0, "log of a non-positive number", x)
                return fn(u)
        else:
            def call(x):
                with np.errstate(all="ignore"):
                    r = fn(f(x))
                return _check(r, name, x)
        return call
    raise TypeError(f"not an expression node: {e!r}")


def evaluate(e: Expr, x):
    """Value of ``e`` at ``x`` (float or array)."""
    with np.errstate(all="ignore"):
        r = compile_expr(e)(x)
    if np.ndim(r) == 0:
        return float(r)
    return np.broadcast_to(r, np.shape(x)).astype(float)


class CompiledExpr:
    """Parsed expression usable as a vectorized integrand g(x)."""

    def __init__(self, src: str):
        self.src = src
        self.tree = parse(src)
        self._fn = compile_expr(self.tree)

    def __call__(self, x):
        with np.errstate(all="ignore"):
            r = self._fn(x)
        if np.ndim(r) == 0 and np.ndim(x) == 0:
            return float(r)
        return np.broadcast_to(r, np.shape(x)) if np.ndim(r) == 0 else r

    def __repr__(self):
        return f"CompiledExpr({self.src!r})"
