"""Numerical replay of the route from the Gaussian integral to Ahmed's integral.

Each step evaluates one displayed form of pi^2/16 (or of Ahmed's integral
once the constant part has been split off) and checks it against its closed
form:

    S0  (int_0^inf e^{-x^2} dx)^4
    S1  24 * 4-D integral in (x, beta, gamma, delta)
    S2  12 * 3-D integral after integrating out delta
    S3  6 * (I1 - I2) after integrating out beta
    S4  I2 after integrating out gamma, against the Ahmed integrand
    S5  Ahmed's integral against 5 pi^2 / 96
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from ahmedquad.cubature import Box, IntegrandN, integrate_nd
from ahmedquad.quad1d import Interval, ParameterError, Tolerance, integrate_1d

PI2_16 = math.pi**2 / 16
AHMED = 5 * math.pi**2 / 96
HALF_SQRT_PI = math.sqrt(math.pi) / 2

ANCHORS = {
    "S0": "the Probability integral",
    "S1": "= 24 ∫₀¹ dx",
    "S2": "π²/16 = 12 ∫",
    "S3": "obviously (arctg 1)²",
    "S4": "if we integrate with regard to γ , we find",
    "S5": "5π²/96, as expected",
}

# residual bounds per step
DEFAULT_TOLERANCES = {
    "S0": 1e-8,
    "S1": 1e-5,
    "S2": 1e-7,
    "S3": 1e-9,
    "S4": 1e-10,
    "S5": 1e-10,
}


def profile_delta(c):
    """int_0^inf d^3 exp(-c d^2) dd = 1 / (2 c^2)."""
    if not np.all(c > 0):
        raise ParameterError(f"c must be positive, got {c}")
    return 0.5 / (c * c)


def profile_beta(gamma, x):
    """int_0^1 g^2 b / (1 + g^2 + g^2 b^2 (1 + x^2))^2 db in closed form."""
    q = 1.0 + x * x
    g2 = gamma * gamma
    return (1.0 / (1.0 + g2) - 1.0 / (1.0 + g2 * (1.0 + q))) / (2.0 * q)


def profile_gamma(k):
    """int_0^1 dg / (1 + k g^2) = arctan(sqrt k) / sqrt k."""
    if not np.all(k > 0):
        raise ParameterError(f"k must be positive, got {k}")
    r = np.sqrt(k)
    return np.arctan(r) / r


# --- integrands, arguments in display order, last one vectorizable ----------

def gaussian(x):
    return np.exp(-x * x)


def ahmed_integrand(x):
    r = np.sqrt(2.0 + x * x)
    return np.arctan(r) / ((1.0 + x * x) * r)


def _quartic_gaussian(x, beta, gamma, delta):
    g2 = gamma * gamma
    b2 = beta * beta
    return delta**3 * g2 * beta * np.exp(-delta * delta * (1.0 + g2 + g2 * b2 + g2 * b2 * x * x))


def _eq2_integrand(x, beta, gamma):
    g2 = gamma * gamma
    b2 = beta * beta
    c = 1.0 + g2 + g2 * b2 + g2 * b2 * x * x
    return g2 * beta / (c * c)


def _delta_profiled(x, beta, gamma):
    g2 = gamma * gamma
    b2 = beta * beta
    return g2 * beta * profile_delta(1.0 + g2 + g2 * b2 + g2 * b2 * x * x)


def _arctan_square(gamma, x):
    return 1.0 / ((1.0 + gamma * gamma) * (1.0 + x * x))


def _ahmed_double(gamma, x):
    return 1.0 / ((1.0 + x * x) * (1.0 + gamma * gamma * (2.0 + x * x)))


def _beta_profiled(gamma, x):
    return profile_beta(gamma, x)


def _gamma_profiled(x):
    return profile_gamma(2.0 + x * x) / (1.0 + x * x)


QUARTIC_GAUSSIAN = IntegrandN(_quartic_gaussian, 4, True)
EQ2_TRIPLE = IntegrandN(_eq2_integrand, 3, True)
DELTA_PROFILED = IntegrandN(_delta_profiled, 3, True)
ARCTAN_SQUARE = IntegrandN(_arctan_square, 2, True)
AHMED_DOUBLE = IntegrandN(_ahmed_double, 2, True)
BETA_PROFILED = IntegrandN(_beta_profiled, 2, True)

UNIT = Interval(0.0, 1.0)
HALF_LINE = Interval(0.0, math.inf)
QUARTIC_BOX = Box((UNIT, UNIT, UNIT, HALF_LINE))

# quadrature tolerances chosen so step multiplier * err stays well inside
# the residual bound of each step
QUAD_TOL = {
    1: Tolerance(1e-13, 1e-13),
    2: Tolerance(1e-13, 1e-13),
    3: Tolerance(1e-10, 1e-12),
    4: Tolerance(1e-7, 1e-12),
}


@dataclass
class ChainStep:
    id: str
    description: str
    dimension: int
    computed: float
    reference: float
    residual: float
    neval: int
    anchor: str
    err_est: float = 0.0
    converged: bool = True
    tol: float = 0.0

    @property
    def passed(self) -> bool:
        return self.converged and self.residual <= self.tol


@dataclass
class CrossCheck:
    id: str
    description: str
    lhs: float
    rhs: float
    residual: float
    bound: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.bound


@dataclass
class ChainReport:
    steps: list
    checks: list
    tolerances: dict
    all_pass: bool = field(init=False)

    def __post_init__(self):
        self.all_pass = all(s.passed for s in self.steps) and all(c.passed for c in self.checks)

    def step(self, sid: str) -> ChainStep:
        return next(s for s in self.steps if s.id == sid)

    def to_dict(self) -> dict:
        return asdict(self)


def _step(sid, description, dim, value, reference, results, tols, scale=1.0):
    err = sum(scale * r.err_est for r in results)
    return ChainStep(
        id=sid,
        description=description,
        dimension=dim,
        computed=value,
        reference=reference,
        residual=abs(value - reference),
        neval=sum(r.neval for r in results),
        anchor=ANCHORS[sid],
        err_est=err,
        converged=all(r.converged for r in results),
        tol=tols[sid],
    )


def run_chain(tol_profile: Optional[dict] = None, *, tol_4d: Optional[float] = None) -> ChainReport:
    """Evaluate S0..S5 and the consistency checks between neighbouring steps.

    ``tol_profile`` overrides residual bounds per step id; ``tol_4d`` overrides
    the absolute quadrature tolerance of the 4-D integral in S1.
    """
    tols = dict(DEFAULT_TOLERANCES)
    if tol_profile:
        unknown = set(tol_profile) - set(tols)
        if unknown:
            raise ParameterError(f"unknown step ids: {sorted(unknown)}")
        tols.update(tol_profile)
    q4 = QUAD_TOL[4] if tol_4d is None else Tolerance(tol_4d, QUAD_TOL[4].rel)

    steps = []
    checks = []

    g = integrate_1d(gaussian, HALF_LINE, QUAD_TOL[1], vectorized=True)
    s0 = _step("S0", "fourth power of the Gaussian half-line integral", 0,
               g.value**4, PI2_16, [g], tols, scale=4 * g.value**3)
    steps.append(s0)

    j4 = integrate_nd(QUARTIC_GAUSSIAN, QUARTIC_BOX, q4)
    s1 = _step("S1", "24 x 4-D integral over [0,1]^3 x [0,inf)", 4,
               24 * j4.value, PI2_16, [j4], tols, scale=24)
    steps.append(s1)

    j3 = integrate_nd(EQ2_TRIPLE, Box.cube(3), QUAD_TOL[3])
    j3_delta = integrate_nd(DELTA_PROFILED, Box.cube(3), QUAD_TOL[3])
    j2_beta = integrate_nd(BETA_PROFILED, Box.cube(2), QUAD_TOL[2])
    s2 = _step("S2", "12 x 3-D integral after the delta integration", 3,
               12 * j3.value, PI2_16, [j3], tols, scale=12)
    # second route: the delta profile composed into the 4-D integrand
    s2.residual = max(s2.residual, abs(24 * j3_delta.value - PI2_16))
    s2.neval += j3_delta.neval
    s2.converged = s2.converged and j3_delta.converged
    steps.append(s2)

    i1 = integrate_nd(ARCTAN_SQUARE, Box.cube(2), QUAD_TOL[2])
    i2 = integrate_nd(AHMED_DOUBLE, Box.cube(2), QUAD_TOL[2])
    s3 = _step("S3", "6 x (I1 - I2) after the beta integration", 2,
               6 * (i1.value - i2.value), PI2_16, [i1, i2], tols, scale=6)
    s3.residual = max(s3.residual, abs(i1.value - PI2_16))
    steps.append(s3)

    i2_gamma = integrate_1d(_gamma_profiled, UNIT, QUAD_TOL[1], vectorized=True)
    ahmed = integrate_1d(ahmed_integrand, UNIT, QUAD_TOL[1], vectorized=True)
    s4 = _step("S4", "I2 with gamma integrated in closed form vs the Ahmed integrand", 1,
               i2_gamma.value, ahmed.value, [i2_gamma, ahmed], tols)
    steps.append(s4)

    s5 = _step("S5", "Ahmed's integral against 5 pi^2/96", 0,
               ahmed.value, AHMED, [ahmed], tols)
    steps.append(s5)

    def cross(cid, description, lhs, rhs, bound):
        checks.append(CrossCheck(cid, description, lhs, rhs, abs(lhs - rhs), bound))

    # neighbouring steps estimate the same constant; the bound is the combined
    # error estimate plus the looser of the two residual bounds
    for a, b in zip(steps[:3], steps[1:4]):
        cross(f"{a.id}~{b.id}", "both estimate pi^2/16", a.computed, b.computed,
              a.err_est + b.err_est + max(a.tol, b.tol))
    cross("S2~beta", "12 x 2-D integral of the beta profile vs 12 x 3-D integral",
          12 * j2_beta.value, 12 * j3.value, 12 * (j2_beta.err_est + j3.err_est) + tols["S2"])
    cross("S3~S4", "2-D I2 vs 1-D I2", i2.value, i2_gamma.value,
          i2.err_est + i2_gamma.err_est + max(tols["S3"], tols["S4"]))
    cross("S4~S5", "1-D I2 vs Ahmed's integral", i2_gamma.value, ahmed.value,
          i2_gamma.err_est + ahmed.err_est + tols["S5"])
    cross("telescope", "6 (pi^2/16 - I2) vs pi^2/16", 6 * (PI2_16 - i2.value), PI2_16, 1e-8)

    return ChainReport(steps, checks, tols)
