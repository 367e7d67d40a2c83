"""Named integrals with known closed forms."""
from __future__ import annotations

import math
from dataclasses import dataclass

from ahmedquad import chain
from ahmedquad.cubature import Box, IntegrandN, default_tolerance, integrate_nd
from ahmedquad.quad1d import EvalBudget, QuadResult, Tolerance, integrate_1d

# residual bound used by `eval`, by dimension
CHECK_TOL = {1: 1e-10, 2: 1e-9, 3: 1e-7, 4: 1e-5}


@dataclass(frozen=True)
class NamedIntegral:
    name: str
    definition: str
    integrand: IntegrandN
    box: Box
    closed_form: str
    value: float
    anchor: str

    @property
    def dim(self) -> int:
        return self.box.d

    @property
    def check_tol(self) -> float:
        return CHECK_TOL.get(self.dim, 1e-5)

    def evaluate(self, tol: Tolerance | None = None, max_evals: int | None = None) -> QuadResult:
        if tol is None:
            tol = default_tolerance(self.dim)
        if self.dim == 1:
            budget = EvalBudget(max_evals) if max_evals is not None else None
            return integrate_1d(self.integrand.fn, self.box.dims[0], tol,
                                vectorized=self.integrand.vectorized, budget=budget)
        return integrate_nd(self.integrand, self.box, tol, max_evals=max_evals)


_U = (0.0, 1.0)
_INF = (0.0, math.inf)

REGISTRY = {
    e.name: e
    for e in [
        NamedIntegral(
            "ahmed",
            "int_0^1 atan(sqrt(2+x^2)) / ((1+x^2) sqrt(2+x^2)) dx",
            IntegrandN(chain.ahmed_integrand, 1, True),
            Box.of(_U),
            "5*pi^2/96",
            5 * math.pi**2 / 96,
            "shown that A = 5π²/96",
        ),
        NamedIntegral(
            "ahmed_double",
            "int_0^1 int_0^1 dgamma dx / ((1+x^2)(1+gamma^2 (2+x^2)))",
            chain.AHMED_DOUBLE,
            Box.of(_U, _U),
            "5*pi^2/96",
            5 * math.pi**2 / 96,
            "if we integrate with regard to γ , we find",
        ),
        NamedIntegral(
            "arctan_square",
            "int_0^1 int_0^1 dgamma dx / ((1+gamma^2)(1+x^2))",
            chain.ARCTAN_SQUARE,
            Box.of(_U, _U),
            "pi^2/16",
            math.pi**2 / 16,
            "obviously (arctg 1)²",
        ),
        NamedIntegral(
            "eq2_triple",
            "int_[0,1]^3 gamma^2 beta / (1+gamma^2+gamma^2 beta^2+gamma^2 beta^2 x^2)^2",
            chain.EQ2_TRIPLE,
            Box.of(_U, _U, _U),
            "pi^2/192",
            math.pi**2 / 192,
            "π²/16 = 12 ∫",
        ),
        NamedIntegral(
            "gauss",
            "int_0^inf exp(-x^2) dx",
            IntegrandN(chain.gaussian, 1, True),
            Box.of(_INF),
            "sqrt(pi)/2",
            math.sqrt(math.pi) / 2,
            "= ½√π",
        ),
        NamedIntegral(
            "power4_gauss_4d",
            "int_[0,1]^3 x [0,inf) delta^3 gamma^2 beta exp(-delta^2 (1+gamma^2+gamma^2 beta^2+gamma^2 beta^2 x^2))",
            chain.QUARTIC_GAUSSIAN,
            chain.QUARTIC_BOX,
            "pi^2/384",
            math.pi**2 / 384,
            "= 24 ∫₀¹ dx",
        ),
    ]
}


def names() -> list[str]:
    return sorted(REGISTRY)
