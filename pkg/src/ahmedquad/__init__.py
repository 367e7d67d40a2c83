"""Adaptive quadrature and radial reduction of multiple integrals, with a
numerical replay of the Gaussian-integral route to Ahmed's integral."""
from ahmedquad.cubature import Box, IntegrandN, integrate_nd, product_integrand
from ahmedquad.quad1d import (
    EvaluationError,
    GaussRule,
    Interval,
    ParameterError,
    QuadResult,
    Tolerance,
    gauss_rule,
    integrate_1d,
    integrate_panel,
    transform_semi_infinite,
)
from ahmedquad.reduction import (
    IdentityReport,
    PowerSpec,
    ReducedIntegrand,
    power_integrand,
    reduce_f1,
    reduce_f2,
    verify_identity,
)

__version__ = "0.1.0"

__all__ = [
    "Box", "IntegrandN", "integrate_nd", "product_integrand",
    "EvaluationError", "GaussRule", "Interval", "ParameterError", "QuadResult", "Tolerance",
    "gauss_rule", "integrate_1d", "integrate_panel", "transform_semi_infinite",
    "IdentityReport", "PowerSpec", "ReducedIntegrand", "power_integrand", "reduce_f1",
    "reduce_f2", "verify_identity",
]
