"""Expression parser, printer, and scalar field machinery."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from firefront.errors import EvalError, InvalidInputError, ParseError
from firefront.fields import (
    BinOp,
    Call,
    ConstantField,
    ExprField,
    FuncField,
    GridField,
    Neg,
    Num,
    Var,
    as_field,
    eval_gradient,
    parse_expr,
)


# ---------------------------------------------------------------------------
# parsing and evaluation
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("text,x,y,expected", [
    ("1.8-0.6*cos(x+y)", 0.0, 0.0, 1.2),
    ("1.8-0.6*cos(x+y)", 1.0, 2.0, 1.8 - 0.6 * math.cos(3.0)),
    ("3.5+cos(y)^2", 0.0, 0.5, 3.5 + math.cos(0.5) ** 2),
    ("2.8-1.6*cos(x+y)", -0.3, 0.1, 2.8 - 1.6 * math.cos(-0.2)),
    ("1.8-cos(x+y)", 0.25, 0.5, 1.8 - math.cos(0.75)),
    ("2+3*4", 0, 0, 14.0),
    ("(2+3)*4", 0, 0, 20.0),
    ("2^3^2", 0, 0, 512.0),          # right-associative power
    ("-2^2", 0, 0, -4.0),            # unary minus binds looser than ^
    ("2^-2", 0, 0, 0.25),            # unary allowed after ^
    ("6/3/2", 0, 0, 1.0),            # left-associative division
    ("8-3-2", 0, 0, 3.0),
    ("--4", 0, 0, 4.0),
    ("sqrt(abs(-9))", 0, 0, 3.0),
    ("exp(0)+tan(0)+sin(0)", 0, 0, 1.0),
    ("1e2+2.5E-1", 0, 0, 100.25),
    ("x*y - y/2", 3.0, 4.0, 10.0),
])
def test_spot_evaluations(text, x, y, expected):
    node = parse_expr(text)
    assert float(node.evaluate(x, y)) == pytest.approx(expected, rel=1e-15)


def test_vectorized_evaluation():
    node = parse_expr("1.8-0.6*cos(x+y)")
    x = np.linspace(-2, 2, 7)
    y = np.linspace(0, 1, 7)
    out = node.evaluate(x, y)
    assert out.shape == (7,)
    np.testing.assert_allclose(out, 1.8 - 0.6 * np.cos(x + y), rtol=1e-15)


@pytest.mark.parametrize("text", [
    "", "1+", "(", "(1+2", "1+*2", "foo(x)", "z+1", "cos", "cos 1",
    "1 2", "*3", "1.2.3", "x..y", "cos(x,y)", ")(",
])
def test_syntax_errors_raise_parse_error(text):
    with pytest.raises(ParseError) as info:
        parse_expr(text)
    assert info.value.position >= 0
    assert "position" in str(info.value)


def test_unknown_name_errors_list_alternatives():
    with pytest.raises(ParseError, match=r"x.*y|variables"):
        parse_expr("q+1")
    with pytest.raises(ParseError, match="cos"):
        parse_expr("cosh(x)")


def test_parse_error_position_points_at_problem():
    with pytest.raises(ParseError) as info:
        parse_expr("1 + $")
    assert info.value.position == 4


def test_non_string_input_rejected():
    with pytest.raises(InvalidInputError):
        parse_expr(12)


# ---------------------------------------------------------------------------
# evaluation failures
# ---------------------------------------------------------------------------

def test_sqrt_of_negative_raises_eval_error_naming_subexpression():
    node = parse_expr("1+sqrt(x)")
    with pytest.raises(EvalError, match=r"sqrt\(x\)"):
        node.evaluate(-1.0, 0.0)


def test_division_by_zero_raises_eval_error():
    node = parse_expr("1/x")
    with pytest.raises(EvalError):
        node.evaluate(0.0, 0.0)


def test_overflow_raises_eval_error():
    node = parse_expr("exp(x)")
    with pytest.raises(EvalError):
        node.evaluate(1e9, 0.0)


def test_eval_error_reported_for_any_bad_array_entry():
    node = parse_expr("sqrt(y)")
    with pytest.raises(EvalError):
        node.evaluate(np.zeros(3), np.array([1.0, -1.0, 4.0]))


# ---------------------------------------------------------------------------
# printer round-trip
# ---------------------------------------------------------------------------

def _canonical_ast(draw_depth=3):
    """Hypothesis strategy for parser-canonical ASTs.

    The parser never produces Num with a negative value (a leading minus
    becomes Neg), so numbers are non-negative here.
    """
    numbers = st.floats(min_value=0.0, max_value=1e6, allow_nan=False,
                        allow_infinity=False)
    leaves = st.one_of(
        numbers.map(Num),
        st.sampled_from([Var("x"), Var("y")]),
    )

    def extend(children):
        return st.one_of(
            children.map(Neg),
            st.tuples(st.sampled_from("+-*/^"), children, children)
            .map(lambda t: BinOp(t[0], t[1], t[2])),
            st.tuples(st.sampled_from(["cos", "sin", "tan", "exp", "sqrt",
                                       "abs"]), children)
            .map(lambda t: Call(t[0], t[1])),
        )

    return st.recursive(leaves, extend, max_leaves=12)


@given(_canonical_ast())
@settings(max_examples=200)
def test_print_parse_round_trip_preserves_structure(node):
    text = str(node)
    assert parse_expr(text) == node


@given(_canonical_ast())
@settings(max_examples=100)
def test_round_trip_preserves_evaluation(node):
    reparsed = parse_expr(str(node))
    x, y = 0.7, -0.3
    try:
        expected = float(node.evaluate(x, y))
    except EvalError:
        return  # domain error is equally fine for both
    assert float(reparsed.evaluate(x, y)) == expected


@given(st.text(max_size=40))
@settings(max_examples=500)
def test_fuzzed_input_never_crashes_the_parser(text):
    try:
        parse_expr(text)
    except ParseError:
        pass


@given(st.text(alphabet="xy+-*/^(). 0123456789cosinexpqrtab", max_size=30))
@settings(max_examples=500)
def test_fuzzed_near_grammar_input_never_crashes(text):
    try:
        parse_expr(text)
    except ParseError:
        pass


# ---------------------------------------------------------------------------
# scalar fields
# ---------------------------------------------------------------------------

def test_constant_field():
    f = ConstantField(2.5)
    assert f.is_constant
    assert float(f.eval(10.0, -3.0)) == 2.5
    assert f.eval(np.zeros(4), np.zeros(4)).shape == (4,)
    with pytest.raises(InvalidInputError):
        ConstantField(float("nan"))


def test_expr_field_constant_detection():
    assert ExprField("1+2").is_constant
    assert not ExprField("1+x").is_constant
    assert ExprField(parse_expr("cos(1)")).is_constant


def test_as_field_coercions():
    assert isinstance(as_field(3), ConstantField)
    assert isinstance(as_field("x+y"), ExprField)
    assert isinstance(as_field(parse_expr("x")), ExprField)
    field = ConstantField(1.0)
    assert as_field(field) is field
    with pytest.raises(InvalidInputError):
        as_field([1, 2])


def test_func_field():
    f = FuncField(lambda x, y: np.asarray(x) + 1.0, False)
    assert not f.is_constant
    assert float(f.eval(2.0, 0.0)) == 3.0


def test_grid_field_bilinear_exact_on_plane():
    xs = np.linspace(0, 4, 9)
    ys = np.linspace(-1, 1, 5)
    values = 2.0 * xs[None, :] + 3.0 * ys[:, None]   # (ny, nx)
    grid = GridField(origin=(0.0, -1.0), spacing=(0.5, 0.5), values=values)
    for x, y in [(0.25, 0.0), (1.7, -0.4), (3.99, 0.99), (0.0, -1.0)]:
        assert float(grid.eval(x, y)) == pytest.approx(2 * x + 3 * y,
                                                       abs=1e-12)


def test_grid_field_clamps_outside_domain():
    grid = GridField(origin=(0.0, 0.0), spacing=(1.0, 1.0),
                     values=np.array([[1.0, 2.0], [3.0, 4.0]]))
    assert float(grid.eval(-5.0, -5.0)) == 1.0
    assert float(grid.eval(10.0, 10.0)) == 4.0


def test_grid_field_validation():
    with pytest.raises(InvalidInputError):
        GridField((0, 0), (0.0, 1.0), np.ones((2, 2)))
    with pytest.raises(InvalidInputError):
        GridField((0, 0), (1.0, 1.0), np.ones((1, 5)))
    with pytest.raises(InvalidInputError):
        GridField((0, 0), (1.0, 1.0), np.array([[1.0, np.nan], [1.0, 1.0]]))


def test_grid_field_constant_detection():
    flat = GridField((0, 0), (1, 1), np.full((3, 3), 7.0))
    assert flat.is_constant
    bumpy = GridField((0, 0), (1, 1), np.arange(9.0).reshape(3, 3))
    assert not bumpy.is_constant


def test_eval_gradient_matches_analytic():
    field = ExprField("x^2*y")
    for x, y in [(0.5, 2.0), (-1.0, 0.3)]:
        gx, gy = eval_gradient(field, x, y)
        assert float(gx) == pytest.approx(2 * x * y, abs=1e-7)
        assert float(gy) == pytest.approx(x * x, abs=1e-7)
    with pytest.raises(InvalidInputError):
        eval_gradient(field, 0.0, 0.0, step=0.0)
