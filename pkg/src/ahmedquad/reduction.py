"""Radial reduction of integrals over squares and cubes.

An n-fold integral of f over (0, alpha)^n becomes an integral over
[0, 1]^(n-1) x (0, alpha): every point of the cube is written as beta times a
point with one coordinate equal to 1, and the n faces contribute one term
each. The power construction applies the same idea repeatedly to write
(int_0^alpha g)^n as n! times a single n-dimensional integral.

Coordinates of every reduced integrand are ordered unit variables first,
radial variable last.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from ahmedquad.cubature import Box, IntegrandN, default_tolerance, integrate_nd
from ahmedquad.quad1d import Interval, ParameterError, QuadResult, Tolerance

MAX_POWER = 18


@dataclass(frozen=True)
class ReducedIntegrand:
    inner: IntegrandN
    multiplier: int
    box: Box
    label: str = ""

    def __post_init__(self):
        if self.inner.arity != self.box.d:
            raise ParameterError("inner arity does not match the box")

    def integrate(self, tol: Optional[Tolerance] = None, **kw) -> QuadResult:
        """Integral of ``inner`` over ``box`` (multiplier not applied)."""
        return integrate_nd(self.inner, self.box, tol, **kw)


@dataclass(frozen=True)
class PowerSpec:
    g: Callable
    n: int
    alpha: float
    vectorized: bool = False

    def __post_init__(self):
        if not isinstance(self.n, int) or not 2 <= self.n <= MAX_POWER:
            raise ParameterError(f"n must be an integer in [2, {MAX_POWER}], got {self.n!r}")
        if not (self.alpha > 0):
            raise ParameterError(f"alpha must be positive, got {self.alpha}")


def _check_alpha(alpha: float) -> None:
    if not (0 < alpha < math.inf):
        raise ParameterError(f"alpha must be finite and positive, got {alpha}")


def _radial_box(n: int, alpha: float) -> Box:
    return Box(tuple(Interval(0.0, 1.0) for _ in range(n - 1)) + (Interval(0.0, alpha),))


def reduce_f1(f: IntegrandN, alpha: float) -> ReducedIntegrand:
    """(u, beta) -> beta * (f(beta, beta*u) + f(beta*u, beta)) on [0,1] x (0, alpha)."""
    if f.arity != 2:
        raise ParameterError(f"reduce_f1 needs a bivariate integrand, got arity {f.arity}")
    _check_alpha(alpha)
    fn = f.fn

    def inner(u, beta):
        bu = beta * u
        return beta * (fn(beta, bu) + fn(bu, beta))

    # f would see array arguments in both slots, so never vectorized
    return ReducedIntegrand(IntegrandN(inner, 2), 1, _radial_box(2, alpha), "f1")


def reduce_f2(f: IntegrandN, n: int, alpha: float) -> ReducedIntegrand:
    """n-dimensional reduction; beta is placed in each slot p in turn and the
    remaining slots get beta*u_1, ..., beta*u_(n-1) in ascending order."""
    if n < 2:
        raise ParameterError(f"n must be >= 2, got {n}")
    if f.arity != n:
        raise ParameterError(f"integrand arity {f.arity} does not match n = {n}")
    _check_alpha(alpha)
    fn = f.fn

    def inner(*args):
        *us, beta = args
        scaled = [beta * u for u in us]
        total = 0.0
        for p in range(n):
            total = total + fn(*scaled[:p], beta, *scaled[p:])
        return beta ** (n - 1) * total

    return ReducedIntegrand(IntegrandN(inner, n), 1, _radial_box(n, alpha), f"f2[n={n}]")


def power_integrand(spec: PowerSpec) -> ReducedIntegrand:
    """Integrand whose integral times n! equals (int_0^alpha g)^n.

    With radial variable t_1 in (0, alpha) and unit variables t_2..t_n, the
    integrand is prod_j t_j^(n-j) * prod_k g(t_1 t_2 ... t_k). Arguments are
    passed as (t_n, ..., t_2, t_1), which for n = 4 reads (x, beta, gamma, delta).
    """
    g, n = spec.g, spec.n
    exps = [n - j for j in range(1, n + 1)]

    def inner(*args):
        ts = args[::-1]
        w = 1.0
        for t, e in zip(ts, exps):
            if e:
                w = w * t**e
        prefix = ts[0]
        out = w * g(prefix)
        for t in ts[1:]:
            prefix = prefix * t
            out = out * g(prefix)
        return out

    box = _radial_box(n, spec.alpha)
    return ReducedIntegrand(
        IntegrandN(inner, n, spec.vectorized), math.factorial(n), box, f"power[n={n}]"
    )


def power_weight(ts) -> float:
    """prod_j t_j^(n-j) for ts = (t_1, ..., t_n), same operation order as the integrand."""
    n = len(ts)
    w = 1.0
    for j, t in enumerate(ts, start=1):
        if n - j:
            w = w * t ** (n - j)
    return w


@dataclass(frozen=True)
class IdentityReport:
    direct: float
    reduced: float
    multiplier: int
    residual: float
    err_est: float
    tol: float
    neval_direct: int
    neval_reduced: int
    status: str

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def verify_identity(
    direct: QuadResult,
    reduced: ReducedIntegrand,
    tol: float,
    quad_tol: Optional[Tolerance] = None,
) -> IdentityReport:
    """Compare a directly computed integral with multiplier * (reduced integral).

    Passes when the residual is within ``tol`` plus the combined error
    estimates. Non-convergence on either side gives status "inconclusive".
    """
    if quad_tol is None:
        quad_tol = default_tolerance(reduced.box.d)
    r = reduced.integrate(quad_tol)
    m = reduced.multiplier
    value = m * r.value
    residual = abs(direct.value - value)
    err = direct.err_est + m * r.err_est
    if not (direct.converged and r.converged):
        status = "inconclusive"
    elif residual <= tol + err:
        status = "pass"
    else:
        status = "fail"
    return IdentityReport(direct.value, value, m, residual, err, tol, direct.neval, r.neval, status)
