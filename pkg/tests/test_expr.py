import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ahmedquad.expr import (
    FUNCTIONS,
    BinOp,
    Call,
    CompiledExpr,
    Const,
    ExprDomainError,
    ExprSyntaxError,
    Neg,
    Num,
    Var,
    evaluate,
    parse,
    to_source,
)
from ahmedquad.quad1d import EvaluationError


@pytest.mark.parametrize("src, x, expected", [
    ("x^2 + 1", 2.0, 5.0),
    ("exp(-x^2)", 0.0, 1.0),
    ("2*3", 17.0, 6.0),
    ("-x^2", 2.0, -4.0),
    ("2^3^2", 0.0, 512.0),
    ("1-2-3", 0.0, -4.0),
    ("8/4/2", 0.0, 1.0),
    ("2^-1", 0.0, 0.5),
    ("-2^2", 0.0, -4.0),
    ("(-2)^2", 0.0, 4.0),
    ("--x", 3.0, 3.0),
    ("2*-x", 3.0, -6.0),
    ("1 + 2 * 3", 0.0, 7.0),
    ("(1 + 2) * 3", 0.0, 9.0),
    ("pi", 0.0, math.pi),
    ("e", 0.0, math.e),
    ("1.5e1 + .5", 0.0, 15.5),
    ("abs(x)", -2.5, 2.5),
    ("log(e)", 0.0, 1.0),
])
def test_evaluate(src, x, expected):
    assert evaluate(parse(src), x) == pytest.approx(expected, rel=1e-15)


def test_ahmed_integrand_at_zero():
    v = evaluate(parse("atan(sqrt(2+x^2))/((1+x^2)*sqrt(2+x^2))"), 0.0)
    assert v == pytest.approx(math.atan(math.sqrt(2)) / math.sqrt(2), abs=1e-15)
    assert v == pytest.approx(0.6755108588, abs=1e-10)


def test_whitespace_insignificant():
    assert parse(" x ^ 2+\t1 ") == parse("x^2+1")


def test_precedence_tree_shapes():
    assert parse("-x^2") == Neg(BinOp("^", Var(), Num(2.0)))
    assert parse("2^3^2") == BinOp("^", Num(2.0), BinOp("^", Num(3.0), Num(2.0)))
    assert parse("1-2-3") == BinOp("-", BinOp("-", Num(1.0), Num(2.0)), Num(3.0))


@pytest.mark.parametrize("src, pos", [
    ("(1+2", 4),
    ("1+2)", 3),
    ("foo(x)", 0),
    ("x y", 2),
    ("1 +", 3),
    ("sin x", 4),
    ("x $ 1", 2),
    ("", 0),
    ("   ", 0),
    ("2*", 2),
    ("1e999", 0),
])
def test_syntax_errors_carry_position(src, pos):
    with pytest.raises(ExprSyntaxError) as info:
        parse(src)
    assert info.value.pos == pos


@pytest.mark.parametrize("src, x", [
    ("sqrt(-1)", 0.0),
    ("log(0)", 0.0),
    ("log(x)", -1.0),
    ("1/x", 0.0),
    ("1/(x-x)", 3.0),
    ("(-8)^(1/3)", 0.0),
    ("exp(x)", 1000.0),
    ("0^-1", 0.0),
])
def test_domain_errors(src, x):
    with pytest.raises(ExprDomainError):
        evaluate(parse(src), x)


def test_domain_error_is_evaluation_error():
    assert issubclass(ExprDomainError, EvaluationError)


def test_array_evaluation_matches_scalar():
    e = parse("sin(x)*exp(-x^2) + atan(x)/(1+x^2)")
    xs = np.linspace(-2, 2, 9)
    np.testing.assert_array_equal(evaluate(e, xs), [evaluate(e, float(x)) for x in xs])


def test_array_domain_error_reports_abscissa():
    with pytest.raises(ExprDomainError) as info:
        evaluate(parse("sqrt(x)"), np.array([1.0, 0.5, -0.25]))
    assert info.value.abscissa == -0.25


def test_compiled_constant_broadcasts():
    g = CompiledExpr("3")
    np.testing.assert_array_equal(g(np.zeros(4)), [3.0] * 4)
    assert g(0.2) == 3.0


# --- round trip ---------------------------------------------------------------

leaves = st.one_of(
    st.floats(0.0, 10.0, allow_nan=False, allow_infinity=False).map(Num),
    st.just(Var()),
    st.sampled_from([Const("pi"), Const("e")]),
)


def extend(children):
    return st.one_of(
        children.map(Neg),
        st.tuples(st.sampled_from("+-*/^"), children, children).map(lambda t: BinOp(*t)),
        st.tuples(st.sampled_from(sorted(FUNCTIONS)), children).map(lambda t: Call(*t)),
    )


trees = st.recursive(leaves, extend, max_leaves=12)


def outcome(e, x):
    try:
        return evaluate(e, x)
    except ExprDomainError:
        return "domain"


@settings(max_examples=200, deadline=None)
@given(trees, st.lists(st.floats(-3.0, 3.0), min_size=10, max_size=10))
def test_round_trip(tree, xs):
    again = parse(to_source(tree))
    assert again == tree
    for x in xs:
        assert outcome(tree, x) == outcome(again, x)
