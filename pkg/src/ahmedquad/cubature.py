"""Iterated adaptive quadrature over boxes.

The outermost axis is integrated adaptively; for each of its abscissae the
remaining (d-1)-dimensional integral is computed the same way with a tenfold
tighter tolerance. Semi-infinite axes are moved to the outside, so the
half-line transform only ever wraps the outer levels.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from ahmedquad.quad1d import (
    EvalBudget,
    Interval,
    ParameterError,
    QuadResult,
    Tolerance,
    integrate_1d,
)

MAX_DIM = 6
TOL_FLOOR = 1e-14


@dataclass(frozen=True)
class IntegrandN:
    """A function of ``arity`` positional real arguments.

    ``vectorized`` promises that any one argument may be a numpy array (the
    others stay scalar) and that the result broadcasts accordingly.
    """

    fn: Callable
    arity: int
    vectorized: bool = False

    def __call__(self, *xs):
        return self.fn(*xs)


@dataclass(frozen=True)
class Box:
    dims: tuple

    def __post_init__(self):
        dims = tuple(d if isinstance(d, Interval) else Interval(*d) for d in self.dims)
        object.__setattr__(self, "dims", dims)
        if not dims:
            raise ParameterError("a box needs at least one axis")

    @classmethod
    def of(cls, *bounds) -> "Box":
        return cls(tuple(bounds))

    @classmethod
    def cube(cls, d: int, lo: float = 0.0, hi: float = 1.0) -> "Box":
        return cls(tuple(Interval(lo, hi) for _ in range(d)))

    @property
    def d(self) -> int:
        return len(self.dims)


def default_tolerance(d: int) -> Tolerance:
    if d <= 1:
        return Tolerance(1e-12, 1e-12)
    return Tolerance({2: 1e-11, 3: 1e-9}.get(d, 1e-7), 1e-12)


def _inner_tolerance(tol: Tolerance) -> Tolerance:
    return Tolerance(
        max(tol.abs / 10, TOL_FLOOR),
        max(tol.rel / 10, TOL_FLOOR) if tol.rel > 0 else 0.0,
        tol.max_panels,
    )


@dataclass
class _Stats:
    neval: int = 0
    n_panels: int = 0
    converged: bool = True
    budget: Optional[EvalBudget] = None


def integrate_nd(
    f: IntegrandN,
    box: Box,
    tol: Optional[Tolerance] = None,
    *,
    max_evals: Optional[int] = None,
) -> QuadResult:
    """Integrate ``f`` over ``box`` by nested adaptive 1-D quadrature.

    ``max_evals`` caps the total number of integrand evaluations across all
    levels; once it is hit every level stops refining and the result comes
    back with ``converged=False``.
    """
    d = box.d
    if not 1 <= d <= MAX_DIM:
        raise ParameterError(f"dimension must be in [1, {MAX_DIM}], got {d}")
    if f.arity != d:
        raise ParameterError(f"integrand arity {f.arity} does not match box dimension {d}")
    if tol is None:
        tol = default_tolerance(d)

    # axis order, outermost first; semi-infinite axes lead
    order = sorted(range(d), key=lambda i: not box.dims[i].semi_infinite)
    stats = _Stats(budget=EvalBudget(max_evals) if max_evals is not None else None)
    point = [0.0] * d
    res = _level(f, box, order, 0, tol, point, stats)
    err = res.err_est
    converged = stats.converged and res.converged
    return QuadResult(res.value, err, stats.neval, stats.n_panels, converged)


def _level(f, box, order, k, tol, point, stats) -> QuadResult:
    axis = order[k]
    iv = box.dims[axis]
    last = k == len(order) - 1
    if last:

        def g(x):
            point[axis] = x
            return f.fn(*point)

        res = integrate_1d(g, iv, tol, vectorized=f.vectorized, budget=stats.budget)
    else:
        inner_tol = _inner_tolerance(tol)
        lo = iv.lo
        semi = iv.semi_infinite
        worst = [0.0]

        def g(x):
            saved = point[axis]
            point[axis] = x
            r = _level(f, box, order, k + 1, inner_tol, point, stats)
            point[axis] = saved
            e = r.err_est
            if semi:
                # Jacobian of x = lo + t/(1-t) is (1 + x - lo)^2
                e *= (1.0 + x - lo) ** 2
            if e > worst[0]:
                worst[0] = e
            return r.value

        res = integrate_1d(g, iv, tol, budget=stats.budget)
        width = 1.0 if semi else iv.length
        res = QuadResult(res.value, res.err_est + width * worst[0], res.neval, res.n_panels, res.converged)
    stats.n_panels += res.n_panels
    if last:
        stats.neval += res.neval
    if not res.converged:
        stats.converged = False
    return res


def product_integrand(g: Callable, d: int, *, vectorized: bool = False) -> IntegrandN:
    """(x_1, ..., x_d) -> g(x_1) * ... * g(x_d)."""
    if d < 1:
        raise ParameterError("d must be >= 1")

    def fn(*xs):
        out = g(xs[0])
        for x in xs[1:]:
            out = out * g(x)
        return out

    return IntegrandN(fn, d, vectorized)


def separable(factors: Sequence[Callable], *, vectorized: bool = False) -> IntegrandN:
    """(x_1, ..., x_d) -> u_1(x_1) * ... * u_d(x_d)."""
    factors = tuple(factors)

    def fn(*xs):
        out = factors[0](xs[0])
        for u, x in zip(factors[1:], xs[1:]):
            out = out * u(x)
        return out

    return IntegrandN(fn, len(factors), vectorized)
