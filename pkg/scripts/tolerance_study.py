"""Cost and accuracy of the 4-D Gaussian step as the quadrature tolerance shrinks."""
import math
import time

from ahmedquad import chain
from ahmedquad.cubature import integrate_nd
from ahmedquad.quad1d import Tolerance

print(f"{'abs tol':<10}{'24*J - pi^2/16':<16}{'24*err_est':<13}{'neval':>10}{'sec':>7}")
for tol in (1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9):
    t = time.perf_counter()
    r = integrate_nd(chain.QUARTIC_GAUSSIAN, chain.QUARTIC_BOX, Tolerance(tol, 0.0))
    print(f"{tol:<10.0e}{24 * r.value - math.pi**2 / 16:<16.2e}{24 * r.err_est:<13.2e}"
          f"{r.neval:>10}{time.perf_counter() - t:>7.2f}")
