"""Residual of (int_0^alpha g)^n = n! * (reduced integral) over a grid of g, n, alpha."""
import math
import time

import numpy as np

from ahmedquad.quad1d import Interval, Tolerance, integrate_1d
from ahmedquad.reduction import PowerSpec, power_integrand

GS = {
    "1": lambda x: np.ones_like(x),
    "x": lambda x: x,
    "x^2": lambda x: x * x,
    "cos x": np.cos,
    "exp(-x^2)": lambda x: np.exp(-x * x),
    "1/(1+x^2)": lambda x: 1 / (1 + x * x),
}

print(f"{'g':<12}{'n':>3}{'alpha':>7}  {'direct':<22}{'residual':<11}{'neval':>9}{'sec':>7}")
for name, g in GS.items():
    for n in (2, 3, 4):
        for alpha in (0.5, 1.0, 2.0, math.inf):
            if math.isinf(alpha) and name not in ("exp(-x^2)", "1/(1+x^2)"):
                continue
            t = time.perf_counter()
            direct = integrate_1d(g, Interval(0.0, alpha), Tolerance(1e-14, 1e-14), vectorized=True).value ** n
            red = power_integrand(PowerSpec(g, n, alpha, vectorized=True))
            tol = Tolerance(1e-7, 1e-12) if math.isinf(alpha) else Tolerance(1e-8 / red.multiplier, 1e-13)
            r = red.integrate(tol)
            res = abs(direct - red.multiplier * r.value)
            print(f"{name:<12}{n:>3}{alpha:>7}  {direct:<22.17g}{res:<11.2e}{r.neval:>9}"
                  f"{time.perf_counter() - t:>7.2f}")
