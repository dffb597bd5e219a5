"""
Mixture-Gamma fits of common fading laws
========================================

Rice, Nakagami-m and Rayleigh envelopes written as mixtures of
x**(2b-1) exp(-c x**2) terms, and how close the truncated Rice
mixture gets to the exact density.
"""

import numpy as np
from scipy import special

from risesc import db_to_linear, fit_nakagami, fit_rayleigh, fit_rice, mg_envelope_moment, mg_pdf

# A 5 dB Rice factor, with 5, 10 and 20 mixture terms
K = db_to_linear(5.0)
x = np.linspace(0, 4, 4001)
exact = 2 * (K + 1) * x * np.exp(-K - (K + 1) * x**2) * special.i0(2 * x * np.sqrt(K * (K + 1)))

for M in (5, 10, 20):
    d = fit_rice(K, M)
    err = np.max(np.abs(mg_pdf(d, x) - exact))
    print(f"Rice M={M:2d}: max |pdf error| = {err:.2e}, E[X^2] = {mg_envelope_moment(d, 2):.12f}")

# Mixture weights fall off quickly; most of the mass sits in a few terms
d = fit_rice(K, 20)
print("leading weights:", np.round(d.weights[:6], 4))

# Nakagami-m and Rayleigh are single-term mixtures
for name, dist in (("Nakagami m=2", fit_nakagami(2.0)), ("Rayleigh", fit_rayleigh())):
    print(f"{name}: a={dist.a[0]:g}, b={dist.b[0]:g}, c={dist.c:g}, "
          f"E[X^4]={mg_envelope_moment(dist, 4):.4f}")
