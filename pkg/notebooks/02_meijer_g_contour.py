"""
Meijer G by contour quadrature
==============================

The Mellin-Barnes integral evaluated along a vertical line, checked
against functions with known G representations.
"""

import math

import numpy as np

from risesc import MeijerGSpec, bessel_k, meijer_g

exp_g = MeijerGSpec(1, 0, (), (0,))          # exp(-z)
log_g = MeijerGSpec(1, 2, (1, 1), (1, 0))    # log(1 + z)
bes_g = MeijerGSpec(2, 0, (), (0.0, 0.0))    # 2 K_0(2 sqrt z)

print(f"{'z':>8} {'exp err':>10} {'log err':>10} {'bessel err':>10}")
for z in np.logspace(-3, 3, 7):
    x = 2 * math.sqrt(z)
    e1 = abs(meijer_g(exp_g, z, log_scale=z) - 1)
    e2 = abs(meijer_g(log_g, z) / math.log1p(z) - 1)
    e3 = abs(meijer_g(bes_g, z, log_scale=x) / (2 * bessel_k(0, x) * math.exp(x)) - 1)
    print(f"{z:8.0e} {e1:10.1e} {e2:10.1e} {e3:10.1e}")

# The contour can sit anywhere between the two pole families
spec = MeijerGSpec(4, 1, (-2.5, -1.5), (0.5, -0.5, -2.5, -2.5))
print("admissible strip:", spec.strip())
for sigma in (-3.4, -3.0, -2.6):
    print(f"sigma={sigma:5.1f}: G = {meijer_g(spec, 4.0, sigma=sigma):.15g}")
