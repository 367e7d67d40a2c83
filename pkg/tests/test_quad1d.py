import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ahmedquad.quad1d import (
    EvalBudget,
    EvaluationError,
    Interval,
    ParameterError,
    Tolerance,
    gauss_rule,
    integrate_1d,
    integrate_panel,
    transform_semi_infinite,
)

AHMED = 5 * math.pi**2 / 96
HALF_SQRT_PI = math.sqrt(math.pi) / 2


def ahmed(x):
    r = math.sqrt(2 + x * x)
    return math.atan(r) / ((1 + x * x) * r)


# --- gauss_rule -------------------------------------------------------------

def test_gauss_rule_order_1_is_midpoint():
    rule = gauss_rule(1)
    assert rule.nodes == (0.0,)
    assert rule.weights == (2.0,)


@pytest.mark.parametrize("order, poly_roots, weights", [
    # roots of (3x^2 - 1)/2 and (5x^3 - 3x)/2
    (2, [-1 / math.sqrt(3), 1 / math.sqrt(3)], [1.0, 1.0]),
    (3, [-math.sqrt(3 / 5), 0.0, math.sqrt(3 / 5)], [5 / 9, 8 / 9, 5 / 9]),
])
def test_gauss_rule_low_orders_match_legendre_roots(order, poly_roots, weights):
    rule = gauss_rule(order)
    np.testing.assert_allclose(rule.nodes, poly_roots, rtol=0, atol=1e-15)
    np.testing.assert_allclose(rule.weights, weights, rtol=0, atol=1e-15)


def test_gauss_rule_frozen_values():
    assert gauss_rule(2).nodes[1] == pytest.approx(0.5773502691896257, abs=1e-16)
    assert gauss_rule(3).nodes[2] == pytest.approx(0.7745966692414834, abs=1e-16)


@pytest.mark.parametrize("order", [0, 65, -3, 2.5, "3"])
def test_gauss_rule_rejects_bad_order(order):
    with pytest.raises(ParameterError):
        gauss_rule(order)


@given(st.integers(1, 64))
def test_gauss_rule_structure(order):
    rule = gauss_rule(order)
    nodes = np.array(rule.nodes)
    weights = np.array(rule.weights)
    assert len(nodes) == len(weights) == order
    assert np.all(np.diff(nodes) > 0)
    assert np.all(np.abs(nodes) < 1)
    assert np.all(weights > 0)
    np.testing.assert_array_equal(nodes, -nodes[::-1])
    np.testing.assert_array_equal(weights, weights[::-1])
    assert weights.sum() == pytest.approx(2.0, abs=1e-13)


@pytest.mark.parametrize("order", range(1, 17))
def test_gauss_rule_exactness(order):
    rule = gauss_rule(order)
    x = np.array(rule.nodes)
    w = np.array(rule.weights)
    for d in range(2 * order):
        exact = 2.0 / (d + 1) if d % 2 == 0 else 0.0
        assert abs(w @ x**d - exact) <= 1e-13, (order, d)


def test_gauss_rule_deterministic():
    assert gauss_rule(37) == gauss_rule(37)


# --- integrate_panel --------------------------------------------------------

def test_panel_constant():
    v, e = integrate_panel(lambda x: 1.0, 0.0, 1.0)
    assert v == pytest.approx(1.0, abs=1e-15)
    assert e <= 1e-15


def test_panel_linear():
    v, _ = integrate_panel(lambda x: x, 0.0, 2.0)
    assert v == pytest.approx(2.0, abs=1e-15)


def test_panel_exponential():
    v, e = integrate_panel(math.exp, 0.0, 1.0)
    assert v == pytest.approx(math.e - 1, abs=1e-15)
    assert e >= 0


def test_panel_vectorized_matches_scalar():
    s = integrate_panel(math.exp, 0.3, 1.7)
    v = integrate_panel(np.exp, 0.3, 1.7, vectorized=True)
    assert s[0] == pytest.approx(v[0], abs=1e-15)
    assert s[1] == pytest.approx(v[1], abs=1e-15)


def test_panel_never_samples_endpoints():
    # 1/x and 1/(1-x) blow up only at the endpoints
    v, _ = integrate_panel(lambda x: 1.0 / (x * (1.0 - x)), 0.0, 1.0)
    assert math.isfinite(v)


def test_panel_nonfinite_reports_abscissa():
    with pytest.raises(EvaluationError) as info:
        integrate_panel(lambda x: math.inf if x > 0.5 else 1.0, 0.0, 1.0)
    assert info.value.abscissa > 0.5


def test_panel_nonfinite_vectorized():
    with pytest.raises(EvaluationError) as info:
        integrate_panel(lambda x: np.where(x < 0.2, np.nan, 1.0), 0.0, 1.0, vectorized=True)
    assert info.value.abscissa < 0.2


# --- integrate_1d -----------------------------------------------------------

def test_ahmed_integral():
    r = integrate_1d(ahmed, Interval(0.0, 1.0))
    assert r.converged
    assert r.value == pytest.approx(0.5140418958900709, abs=1e-15)
    assert r.value == pytest.approx(AHMED, abs=1e-15)


def test_gaussian_half_line():
    r = integrate_1d(lambda x: math.exp(-x * x), Interval(0.0, math.inf))
    assert r.converged
    assert r.value == pytest.approx(0.8862269254527580, abs=1e-14)


def test_monomial_degree_seven():
    r = integrate_1d(lambda x: x**7, Interval(0.0, 1.0))
    assert r.value == pytest.approx(0.125, abs=1e-16)
    assert r.neval == 15 and r.n_panels == 1


@pytest.mark.parametrize("f, exact", [
    (math.exp, math.e - 1),
    (lambda x: 1 / (1 + x * x), math.pi / 4),
    (math.cos, math.sin(1.0)),
])
def test_embedded_pair_soundness(f, exact):
    for tol in (1e-4, 1e-7, 1e-10, 1e-13):
        r = integrate_1d(f, Interval(0.0, 1.0), Tolerance(tol, 0.0))
        assert r.converged
        assert r.err_est <= tol
        assert abs(r.value - exact) <= 10 * r.err_est + 1e-16


@pytest.mark.parametrize("f, exact", [
    (lambda x: math.exp(-x), 1.0),
    (lambda x: math.exp(-x * x), HALF_SQRT_PI),
    (lambda x: 1 / (1 + x * x), math.pi / 2),
])
def test_transform_correctness(f, exact):
    g = transform_semi_infinite(f)
    r = integrate_1d(g, Interval(0.0, 1.0))
    assert abs(r.value - exact) <= 1e-10


def test_transform_point_values():
    g = transform_semi_infinite(lambda x: math.exp(-x))
    assert g(0.0) == 1.0
    assert g(0.5) == pytest.approx(4 / math.e, abs=1e-15)
    assert g(0.5) == pytest.approx(1.471517765, abs=1e-9)


def test_transform_shifted_lower_bound():
    r = integrate_1d(lambda x: math.exp(-x), Interval(2.0, math.inf))
    assert r.value == pytest.approx(math.exp(-2.0), abs=1e-13)


def test_semi_infinite_never_touches_t_equal_one():
    seen = []

    def f(x):
        seen.append(x)
        return math.exp(-x)

    integrate_1d(f, Interval(0.0, math.inf))
    assert all(math.isfinite(x) for x in seen)


def test_determinism():
    f = lambda x: math.sin(30 * x) ** 2 / (1 + x)
    a = integrate_1d(f, Interval(0.0, 3.0))
    b = integrate_1d(f, Interval(0.0, 3.0))
    assert a == b


def test_budget_exhaustion_is_not_an_error():
    f = lambda x: 1.0 / (1e-4 + (x - 0.3) ** 2)
    r = integrate_1d(f, Interval(0.0, 1.0), Tolerance(1e-14, 0.0, max_panels=4))
    assert not r.converged
    assert r.n_panels <= 4
    assert math.isfinite(r.value)


def test_shared_budget_stops_refinement():
    f = lambda x: 1.0 / (1e-4 + (x - 0.3) ** 2)
    budget = EvalBudget(100)
    r = integrate_1d(f, Interval(0.0, 1.0), Tolerance(1e-14, 0.0), budget=budget)
    assert not r.converged
    assert budget.count == r.neval


def test_peaked_integrand_converges():
    f = lambda x: 1.0 / (1e-4 + (x - 0.3) ** 2)
    exact = 100 * (math.atan(0.7 / 1e-2) + math.atan(0.3 / 1e-2))
    r = integrate_1d(f, Interval(0.0, 1.0), Tolerance(1e-9, 1e-12))
    assert r.converged
    assert r.value == pytest.approx(exact, abs=1e-8)


def test_nonconvergence_on_nonintegrable_endpoint():
    r = integrate_1d(lambda x: 1.0 / x, Interval(0.0, 1.0), Tolerance(1e-10, 1e-10, max_panels=200))
    assert not r.converged


@pytest.mark.parametrize("lo, hi", [(1.0, 1.0), (2.0, 1.0), (-math.inf, 0.0), (0.0, math.nan), (0.0, -math.inf)])
def test_interval_validation(lo, hi):
    with pytest.raises(ParameterError):
        Interval(lo, hi)


@pytest.mark.parametrize("kw", [dict(abs=0.0, rel=0.0), dict(abs=-1.0), dict(rel=-1e-3), dict(max_panels=0)])
def test_tolerance_validation(kw):
    with pytest.raises(ParameterError):
        Tolerance(**kw)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.floats(-1, 1), min_size=1, max_size=12),
    st.floats(-2, 2),
    st.floats(0.01, 3),
)
def test_polynomials_against_antiderivative(coeffs, a, width):
    b = a + width
    poly = np.polynomial.Polynomial(coeffs)
    anti = poly.integ()
    exact = anti(b) - anti(a)
    r = integrate_1d(lambda x: float(poly(x)), Interval(a, b))
    assert r.converged
    assert abs(r.value - exact) <= 1e-11 * max(1.0, abs(exact))
