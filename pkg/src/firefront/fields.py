"""Scalar fields over the plane and a small expression language for them.

Spatially varying model parameters (spread rate, slope/wind coefficients)
are ScalarFields: constants, parsed arithmetic expressions in x and y, or
gridded samples with bilinear interpolation.  All evaluation is
numpy-vectorized so the marching code can query whole fronts at once.

Expression grammar, loosest to tightest binding:

    expr   := term  (('+' | '-') term)*        left-associative
    term   := unary (('*' | '/') unary)*       left-associative
    unary  := '-' unary | power
    power  := atom ('^' unary)?                right-associative
    atom   := NUMBER | 'x' | 'y' | FUNC '(' expr ')' | '(' expr ')'

so ``^`` binds tightest, then unary minus, then ``* /``, then ``+ -``.
Functions: cos, sin, tan, exp, sqrt, abs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import EvalError, InvalidInputError, ParseError

VARIABLES = ("x", "y")

FUNCTIONS = {
    "cos": np.cos,
    "sin": np.sin,
    "tan": np.tan,
    "exp": np.exp,
    "sqrt": np.sqrt,
    "abs": np.abs,
}

_ALLOWED_NAMES = ", ".join(sorted(FUNCTIONS) + list(VARIABLES))


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------

# precedence levels used by the printer: 1 add, 2 mul, 3 unary, 4 power, 5 atom
_ADD, _MUL, _UNARY, _POW, _ATOM = 1, 2, 3, 4, 5


def _check_finite(value, node):
    if not np.all(np.isfinite(value)):
        raise EvalError(
            f"non-finite value in subexpression '{node}'", subexpr=str(node)
        )
    return value


@dataclass(frozen=True)
class Num:
    value: float

    def evaluate(self, x, y):
        return np.broadcast_to(np.float64(self.value), np.broadcast(x, y).shape).copy() \
            if np.ndim(x) or np.ndim(y) else np.float64(self.value)

    @property
    def precedence(self):
        return _ATOM if self.value >= 0 else _UNARY

    def free_variables(self):
        return set()

    def __str__(self):
        return repr(float(self.value))


@dataclass(frozen=True)
class Var:
    name: str

    def evaluate(self, x, y):
        return np.asarray(x, dtype=float) if self.name == "x" else np.asarray(y, dtype=float)

    precedence = _ATOM

    def free_variables(self):
        return {self.name}

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Neg:
    operand: object

    def evaluate(self, x, y):
        return -self.operand.evaluate(x, y)

    precedence = _UNARY

    def free_variables(self):
        return self.operand.free_variables()

    def __str__(self):
        inner = str(self.operand)
        if self.operand.precedence < _UNARY:
            inner = f"({inner})"
        return f"-{inner}"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object

    def evaluate(self, x, y):
        lhs = self.left.evaluate(x, y)
        rhs = self.right.evaluate(x, y)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            if self.op == "+":
                out = lhs + rhs
            elif self.op == "-":
                out = lhs - rhs
            elif self.op == "*":
                out = lhs * rhs
            elif self.op == "/":
                out = lhs / rhs
            else:  # "^"
                out = np.power(lhs, rhs)
        return _check_finite(out, self)

    @property
    def precedence(self):
        return {"+": _ADD, "-": _ADD, "*": _MUL, "/": _MUL, "^": _POW}[self.op]

    def free_variables(self):
        return self.left.free_variables() | self.right.free_variables()

    def __str__(self):
        prec = self.precedence
        lhs, rhs = str(self.left), str(self.right)
        if self.op == "^":
            # left operand of ^ is an atom in the grammar; right may be unary
            if self.left.precedence < _ATOM:
                lhs = f"({lhs})"
            if self.right.precedence < _UNARY:
                rhs = f"({rhs})"
        else:
            if self.left.precedence < prec:
                lhs = f"({lhs})"
            # left-associative: equal precedence on the right needs parens
            if self.right.precedence <= prec:
                rhs = f"({rhs})"
        return f"{lhs}{self.op}{rhs}"


@dataclass(frozen=True)
class Call:
    func: str
    arg: object

    def evaluate(self, x, y):
        val = self.arg.evaluate(x, y)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            out = FUNCTIONS[self.func](val)
        return _check_finite(out, self)

    precedence = _ATOM

    def free_variables(self):
        return self.arg.free_variables()

    def __str__(self):
        return f"{self.func}({self.arg})"


# ---------------------------------------------------------------------------
# tokenizer / parser
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()]))"
)


@dataclass(frozen=True)
class _Token:
    kind: str  # "num" | "ident" | "op" | "end"
    text: str
    pos: int


def _tokenize(text):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        match = _TOKEN_RE.match(text, pos)
        if match is None or match.lastgroup is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = n - len(stripped)
            raise ParseError(f"unexpected character {stripped[0]!r}", at)
        kind = match.lastgroup
        tokens.append(_Token(kind, match.group(kind), match.start(kind)))
        pos = match.end()
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    @property
    def current(self):
        return self.tokens[self.index]

    def advance(self):
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect_op(self, op):
        token = self.current
        if token.kind == "op" and token.text == op:
            return self.advance()
        found = repr(token.text) if token.kind != "end" else "end of input"
        raise ParseError(f"expected {op!r}, found {found}", token.pos)

    def parse(self):
        node = self.expr()
        token = self.current
        if token.kind != "end":
            raise ParseError(
                f"unexpected {token.text!r} after a complete expression", token.pos
            )
        return node

    def expr(self):
        node = self.term()
        while self.current.kind == "op" and self.current.text in "+-":
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.current.kind == "op" and self.current.text in "*/":
            op = self.advance().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self.current.kind == "op" and self.current.text == "-":
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self):
        node = self.atom()
        if self.current.kind == "op" and self.current.text == "^":
            self.advance()
            node = BinOp("^", node, self.unary())
        return node

    def atom(self):
        token = self.current
        if token.kind == "num":
            self.advance()
            return Num(float(token.text))
        if token.kind == "ident":
            self.advance()
            name = token.text
            if self.current.kind == "op" and self.current.text == "(":
                if name not in FUNCTIONS:
                    raise ParseError(
                        f"unknown function {name!r}; allowed names: {_ALLOWED_NAMES}",
                        token.pos,
                    )
                self.advance()
                arg = self.expr()
                self.expect_op(")")
                return Call(name, arg)
            if name in VARIABLES:
                return Var(name)
            raise ParseError(
                f"unknown identifier {name!r}; allowed names: {_ALLOWED_NAMES}",
                token.pos,
            )
        if token.kind == "op" and token.text == "(":
            self.advance()
            node = self.expr()
            self.expect_op(")")
            return node
        found = repr(token.text) if token.kind != "end" else "end of input"
        raise ParseError(
            f"expected a number, name, '(' or '-', found {found}", token.pos
        )


def parse_expr(text):
    """Parse ``text`` into an expression AST; raises ParseError on bad input."""
    if not isinstance(text, str):
        raise InvalidInputError(f"expected an expression string, got {type(text).__name__}")
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# scalar fields
# ---------------------------------------------------------------------------

class ScalarField:
    """A scalar function of plane position, vectorized over numpy arrays."""

    is_constant = False

    def eval(self, x, y):
        raise NotImplementedError

    def __call__(self, x, y):
        return self.eval(x, y)


class ConstantField(ScalarField):
    """A spatially uniform field."""

    is_constant = True

    def __init__(self, value):
        value = float(value)
        if not np.isfinite(value):
            raise InvalidInputError(f"constant field value must be finite, got {value}")
        self.value = value

    def eval(self, x, y):
        shape = np.broadcast(np.asarray(x), np.asarray(y)).shape
        if shape == ():
            return np.float64(self.value)
        return np.full(shape, self.value)

    def __repr__(self):
        return f"ConstantField({self.value!r})"


class ExprField(ScalarField):
    """A field defined by a parsed expression in x and y."""

    def __init__(self, expr):
        if isinstance(expr, str):
            expr = parse_expr(expr)
        self.expr = expr
        self.is_constant = not expr.free_variables()

    def eval(self, x, y):
        return self.expr.evaluate(x, y)

    def __repr__(self):
        return f"ExprField({str(self.expr)!r})"


class GridField(ScalarField):
    """Bilinear interpolation of a regular grid of samples.

    ``values[j, i]`` is the sample at (x0 + i*dx, y0 + j*dy).  Evaluation
    outside the grid clamps to the boundary value (constant extension).
    """

    def __init__(self, origin, spacing, values):
        x0, y0 = float(origin[0]), float(origin[1])
        dx, dy = float(spacing[0]), float(spacing[1])
        values = np.asarray(values, dtype=float)
        if dx <= 0 or dy <= 0:
            raise InvalidInputError(f"grid spacing must be positive, got ({dx}, {dy})")
        if values.ndim != 2 or values.shape[0] < 2 or values.shape[1] < 2:
            raise InvalidInputError(
                f"grid needs at least 2 samples per axis, got shape {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise InvalidInputError("grid values must all be finite")
        self.origin = (x0, y0)
        self.spacing = (dx, dy)
        self.values = values
        self.is_constant = bool(np.ptp(values) == 0.0)

    def eval(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        ny, nx = self.values.shape
        fx = np.clip((x - self.origin[0]) / self.spacing[0], 0.0, nx - 1.0)
        fy = np.clip((y - self.origin[1]) / self.spacing[1], 0.0, ny - 1.0)
        i0 = np.minimum(np.floor(fx).astype(int), nx - 2)
        j0 = np.minimum(np.floor(fy).astype(int), ny - 2)
        tx = fx - i0
        ty = fy - j0
        v = self.values
        out = ((1 - tx) * (1 - ty) * v[j0, i0]
               + tx * (1 - ty) * v[j0, i0 + 1]
               + (1 - tx) * ty * v[j0 + 1, i0]
               + tx * ty * v[j0 + 1, i0 + 1])
        return out if out.shape else np.float64(out)

    def __repr__(self):
        return (f"GridField(origin={self.origin}, spacing={self.spacing}, "
                f"shape={self.values.shape})")


class FuncField(ScalarField):
    """A field backed by an arbitrary vectorized callable (x, y) -> value.

    Used for derived quantities (e.g. spread-frame parameters computed
    pointwise from rate fields); not part of the scenario file surface.
    """

    def __init__(self, fn, is_constant=False):
        self._fn = fn
        self.is_constant = bool(is_constant)

    def eval(self, x, y):
        return self._fn(x, y)

    def __repr__(self):
        return f"FuncField({self._fn!r})"


def as_field(value):
    """Coerce a number, expression string, AST or ScalarField to a ScalarField."""
    if isinstance(value, ScalarField):
        return value
    if isinstance(value, str):
        return ExprField(value)
    if isinstance(value, (Num, Var, Neg, BinOp, Call)):
        return ExprField(value)
    if isinstance(value, (int, float, np.floating, np.integer)):
        return ConstantField(value)
    raise InvalidInputError(
        f"cannot interpret {type(value).__name__} as a scalar field"
    )


def eval_gradient(field, x, y, step=1e-4):
    """Central-difference gradient of a field; O(step^2) accurate.

    Returns (d/dx, d/dy) with the same broadcast shape as the inputs.
    """
    if step <= 0:
        raise InvalidInputError(f"gradient step must be positive, got {step}")
    gx = (field.eval(np.asarray(x) + step, y) - field.eval(np.asarray(x) - step, y)) / (2 * step)
    gy = (field.eval(x, np.asarray(y) + step) - field.eval(x, np.asarray(y) - step)) / (2 * step)
    return gx, gy
