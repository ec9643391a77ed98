"""Scalar expression fields on a coordinate chart, with forward-mode
dual-number differentiation.

Expressions are parsed from strings over declared coordinate names and a
small set of operators and elementary functions.  Evaluation is generic in
the scalar type: plugging in floats gives values, plugging in ``Dual``
numbers gives exact directional derivatives, and nesting duals gives exact
second derivatives (used downstream for curvature).
"""

from __future__ import annotations

import math
import re
from typing import NamedTuple, Sequence


class ExpressionError(Exception):
    """Base class for expression parsing and evaluation errors."""


class ExprSyntaxError(ExpressionError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownIdentifierError(ExpressionError):
    def __init__(self, name, position=None):
        msg = f"unknown identifier '{name}'"
        if position is not None:
            msg += f" (at position {position})"
        super().__init__(msg)
        self.name = name


class EvalDomainError(ExpressionError):
    """log/sqrt of a non-positive argument, or division by zero."""


class NonFiniteError(ExpressionError):
    """Evaluation produced inf or nan."""


# ---------------------------------------------------------------------------
# dual numbers


class Dual:
    """Forward-mode dual number (value, tangent).

    ``val`` and ``dot`` may themselves be Dual, which yields exact mixed
    second derivatives by nested seeding.
    """

    __slots__ = ("val", "dot")

    def __init__(self, val, dot=0.0):
        self.val = val
        self.dot = dot

    @staticmethod
    def _lift(x):
        return x if isinstance(x, Dual) else Dual(float(x), 0.0)

    def __add__(self, other):
        o = Dual._lift(other)
        return Dual(self.val + o.val, self.dot + o.dot)

    __radd__ = __add__

    def __sub__(self, other):
        o = Dual._lift(other)
        return Dual(self.val - o.val, self.dot - o.dot)

    def __rsub__(self, other):
        return Dual._lift(other).__sub__(self)

    def __mul__(self, other):
        o = Dual._lift(other)
        return Dual(self.val * o.val, self.dot * o.val + self.val * o.dot)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Dual._lift(other)
        if primal(o) == 0.0:
            raise EvalDomainError("division by zero")
        v = self.val / o.val
        return Dual(v, (self.dot - v * o.dot) / o.val)

    def __rtruediv__(self, other):
        return Dual._lift(other).__truediv__(self)

    def __neg__(self):
        return Dual(-self.val, -self.dot)

    def __repr__(self):
        return f"Dual({self.val!r}, {self.dot!r})"


def primal(x):
    """Strip all dual levels and return the underlying float."""
    while isinstance(x, Dual):
        x = x.val
    return x


def tangent(x):
    """First-order tangent of a scalar; 0 for plain floats."""
    return x.dot if isinstance(x, Dual) else 0.0


def d_sin(x):
    if isinstance(x, Dual):
        return Dual(d_sin(x.val), d_cos(x.val) * x.dot)
    return math.sin(x)


def d_cos(x):
    if isinstance(x, Dual):
        return Dual(d_cos(x.val), -d_sin(x.val) * x.dot)
    return math.cos(x)


def d_exp(x):
    if isinstance(x, Dual):
        e = d_exp(x.val)
        return Dual(e, e * x.dot)
    return math.exp(x)


def d_log(x):
    if primal(x) <= 0.0:
        raise EvalDomainError(f"log of non-positive argument {primal(x)}")
    if isinstance(x, Dual):
        return Dual(d_log(x.val), x.dot / x.val)
    return math.log(x)


def d_sqrt(x):
    if primal(x) <= 0.0:
        # disallow 0 too: the derivative blows up there
        raise EvalDomainError(f"sqrt of non-positive argument {primal(x)}")
    if isinstance(x, Dual):
        s = d_sqrt(x.val)
        return Dual(s, x.dot / (2.0 * s))
    return math.sqrt(x)


def d_ipow(x, n: int):
    """x**n for integer n by repeated multiplication (dual-exact)."""
    if n == 0:
        return 1.0
    if n < 0:
        return 1.0 / d_ipow(x, -n)
    r = x
    for _ in range(n - 1):
        r = r * x
    return r


_FUNCTIONS = {"sin": d_sin, "cos": d_cos, "exp": d_exp, "log": d_log, "sqrt": d_sqrt}


# ---------------------------------------------------------------------------
# expression AST

# Node precedence levels used for minimal-paren printing.
_PREC_ADD, _PREC_MUL, _PREC_UNARY, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4, 5


class Num:
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = float(value)

    def eval(self, env):
        return self.value

    prec = _PREC_ATOM

    def to_str(self):
        return repr(self.value)


class Var:
    __slots__ = ("index", "name")

    def __init__(self, index, name):
        self.index = index
        self.name = name

    def eval(self, env):
        return env[self.index]

    prec = _PREC_ATOM

    def to_str(self):
        return self.name


class Neg:
    __slots__ = ("arg",)

    def __init__(self, arg):
        self.arg = arg

    def eval(self, env):
        return -self.arg.eval(env)

    prec = _PREC_UNARY

    def to_str(self):
        return "-" + _wrap(self.arg, _PREC_UNARY)


class BinOp:
    __slots__ = ("op", "left", "right")

    def __init__(self, op, left, right):
        self.op = op
        self.left = left
        self.right = right

    def eval(self, env):
        a = self.left.eval(env)
        b = self.right.eval(env)
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        # division: guard the float path (Dual guards internally)
        if not isinstance(a, Dual) and not isinstance(b, Dual):
            if b == 0.0:
                raise EvalDomainError("division by zero")
            return a / b
        return Dual._lift(a) / b

    @property
    def prec(self):
        return _PREC_ADD if self.op in "+-" else _PREC_MUL

    def to_str(self):
        lp = self.prec
        # right operand needs strictly higher precedence under - and /
        left = _wrap(self.left, lp)
        right = _wrap(self.right, lp, strict=self.op in "-/")
        return f"{left} {self.op} {right}"


class Pow:
    __slots__ = ("base", "exponent")

    def __init__(self, base, exponent):
        self.base = base
        self.exponent = int(exponent)

    def eval(self, env):
        return d_ipow(self.base.eval(env), self.exponent)

    prec = _PREC_POW

    def to_str(self):
        return f"{_wrap(self.base, _PREC_ATOM)}^{self.exponent}"


class Call:
    __slots__ = ("fname", "arg")

    def __init__(self, fname, arg):
        self.fname = fname
        self.arg = arg

    def eval(self, env):
        return _FUNCTIONS[self.fname](self.arg.eval(env))

    prec = _PREC_ATOM

    def to_str(self):
        return f"{self.fname}({self.arg.to_str()})"


def _wrap(node, min_prec, strict=False):
    p = node.prec
    if p < min_prec or (strict and p == min_prec):
        return "(" + node.to_str() + ")"
    return node.to_str()


# ---------------------------------------------------------------------------
# tokenizer / recursive-descent parser

_TOKEN_RE = re.compile(
    r"\s*(?:"
    r"(?P<number>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()])"
    r")"
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            # skip-only whitespace tail is fine
            if text[pos:].strip() == "":
                break
            raise ExprSyntaxError(f"unexpected character {text[pos:].strip()[0]!r}", pos)
        if m.lastgroup is not None:
            tokens.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, coord_names):
        self.tokens = _tokenize(text)
        self.i = 0
        self.coord_index = {name: k for k, name in enumerate(coord_names)}

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, pos = self.peek()
        if val != value:
            raise ExprSyntaxError(f"expected {value!r}", pos)
        return self.next()

    def parse(self):
        node = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected token {val!r}", pos)
        return node

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.next()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[1] in ("*", "/"):
            op = self.next()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self.peek()[1] == "-":
            self.next()
            arg = self.unary()
            # fold negated literals so constant detection sees them
            if isinstance(arg, Num):
                return Num(-arg.value)
            return Neg(arg)
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.next()
            sign = 1
            if self.peek()[1] == "-":
                self.next()
                sign = -1
            kind, val, pos = self.peek()
            if kind != "number" or not re.fullmatch(r"\d+", val):
                raise ExprSyntaxError("expected integer exponent after '^'", pos)
            self.next()
            return Pow(base, sign * int(val))
        return base

    def atom(self):
        kind, val, pos = self.next()
        if kind == "number":
            return Num(val)
        if kind == "ident":
            if val in _FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(val, arg)
            if val in self.coord_index:
                return Var(self.coord_index[val], val)
            raise UnknownIdentifierError(val, pos)
        if val == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise ExprSyntaxError(f"expected a number, identifier or '('", pos)


# ---------------------------------------------------------------------------
# public API


class DualScalar(NamedTuple):
    value: float
    derivative: float


class ScalarField:
    """A real-valued function of chart coordinates, given by an expression
    tree.  Immutable; evaluation is a pure function."""

    __slots__ = ("body", "coord_names")

    def __init__(self, body, coord_names):
        self.body = body
        self.coord_names = tuple(coord_names)

    @property
    def arity(self):
        return len(self.coord_names)

    def eval_scalar(self, env):
        """Evaluate with an arbitrary scalar environment (floats or Duals)."""
        return self.body.eval(env)

    def __call__(self, point: Sequence[float]) -> float:
        v = self.body.eval([float(x) for x in point])
        if not math.isfinite(v):
            raise NonFiniteError(f"evaluation produced {v}")
        return v

    def to_string(self) -> str:
        return self.body.to_str()

    def __repr__(self):
        return f"ScalarField({self.to_string()!r}, coords={list(self.coord_names)})"


def parse_expression(text: str, coord_names: Sequence[str]) -> ScalarField:
    """Parse ``text`` over the given coordinate names.

    Precedence, tightest first: ``^`` (integer exponent), unary minus,
    ``* /``, ``+ -``.  Unknown identifiers are rejected.
    """
    if not text or not text.strip():
        raise ExprSyntaxError("empty expression", 0)
    names = list(coord_names)
    if len(set(names)) != len(names):
        raise ValueError("coordinate names must be pairwise distinct")
    return ScalarField(_Parser(text, names).parse(), names)


def constant_field(value: float, coord_names: Sequence[str]) -> ScalarField:
    return ScalarField(Num(value), coord_names)


def eval_with_derivative(f: ScalarField, point: Sequence[float], j: int) -> DualScalar:
    """Value and exact partial derivative of ``f`` w.r.t. coordinate ``j``."""
    if not 0 <= j < f.arity:
        raise IndexError(f"coordinate index {j} out of range for arity {f.arity}")
    env = [Dual(float(x), 1.0 if k == j else 0.0) for k, x in enumerate(point)]
    out = f.eval_scalar(env)
    value, deriv = primal(out), primal(tangent(out))
    if not (math.isfinite(value) and math.isfinite(deriv)):
        raise NonFiniteError(f"evaluation produced ({value}, {deriv})")
    return DualScalar(value, deriv)
