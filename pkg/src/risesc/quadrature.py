"""Direct numerical integration of the ergodic capacities.

These integrate the defining expectations E[log2(1 + g X^2)] against the
KG and MG densities with :func:`scipy.integrate.quad`, after the change of
variable y = x**2. They share no code path with the Meijer-G closed forms
and serve as an independent check of them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from .cascade import KGParams
from .mg_model import MixtureGamma
from .specfun import ConvergenceError, log_bessel_k

LN2 = math.log(2.0)
# log(1e-18): tail cut relative to the peak of the integrand.
TAIL_LOG_DROP = math.log(1e-18)


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_subdivisions: int = 200

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


DEFAULT = QuadratureConfig()


def kg_log_pdf(kg: KGParams, x):
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("kg_pdf is defined for x > 0")
    s = kg.k + kg.m
    log_c = math.log(4.0) + s * math.log(kg.xi) - special.gammaln(kg.k) - special.gammaln(kg.m)
    return log_c + (s - 1) * np.log(x) + log_bessel_k(kg.k - kg.m, 2 * kg.xi * x)


def kg_pdf(kg: KGParams, x):
    """KG density of the cascade amplitude at ``x > 0``."""
    out = np.exp(kg_log_pdf(kg, x))
    return float(out) if np.ndim(out) == 0 else out


def _power_log_density_kg(kg: KGParams):
    # Density of Y = A**2: f_A(sqrt y) / (2 sqrt y).
    def logf(y):
        return kg_log_pdf(kg, math.sqrt(y)) - math.log(2.0) - 0.5 * math.log(y)
    return logf


def _power_log_density_term(b: float, c: float):
    # Unnormalized Gamma(b, rate c) kernel on the power axis.
    def logf(y):
        return (b - 1) * math.log(y) - c * y
    return logf


def _support(logf, center: float, lo_floor: float = 0.0) -> tuple[float, float, float]:
    """Bracket where ``logf`` stays within 1e-18 of its peak.

    Returns (lower, peak_location, upper); ``lower`` may be ``lo_floor``.
    """
    grid = center * np.logspace(-6, 3, 400)
    vals = np.array([logf(y) for y in grid])
    ipk = int(np.nanargmax(vals))
    peak = vals[ipk]
    cut = peak + TAIL_LOG_DROP
    above = np.nonzero(vals >= cut)[0]
    lo_i, hi_i = above[0], above[-1]
    lower = lo_floor if lo_i == 0 else grid[lo_i - 1]
    if hi_i == len(grid) - 1:
        raise ConvergenceError("integrand tail does not decay inside the search window")
    upper = grid[hi_i + 1]
    return lower, grid[ipk], upper


def _integrate(f, breakpoints, cfg: QuadratureConfig) -> tuple[float, float]:
    total, err = 0.0, 0.0
    for lo, hi in zip(breakpoints[:-1], breakpoints[1:]):
        if hi <= lo:
            continue
        v, e = integrate.quad(f, lo, hi, epsabs=cfg.abs_tol, epsrel=cfg.rel_tol,
                              limit=cfg.max_subdivisions, full_output=0)
        total += v
        err += e
    if err > max(cfg.abs_tol * len(breakpoints), 10 * cfg.rel_tol * abs(total)):
        raise ConvergenceError(f"quadrature error estimate {err:.3g} for value {total:.6g}")
    return total, err


def _capacity_on_power_axis(logf, gain: float, center: float, cfg: QuadratureConfig,
                            log_scale: float = 0.0):
    lower, mode, upper = _support(logf, center)

    def f(y):
        if y <= 0:
            return 0.0
        return math.log1p(gain * y) * math.exp(logf(y) + log_scale)

    # The log factor is ~gain*y near 0; split there and around the mode.
    pts = sorted({lower, min(1.0 / gain, upper), mode, upper} | {0.5 * mode, 2 * mode})
    pts = [p for p in pts if lower <= p <= upper]
    value, err = _integrate(f, pts, cfg)
    tail = math.exp(logf(upper) + log_scale) * upper * math.log1p(gain * upper)
    if tail > 1e-12:
        raise ConvergenceError(f"tail bound {tail:.3g} at truncation point {upper:.6g}")
    return value / LN2, err / LN2


def legit_capacity_quad(kg: KGParams, gain: float, cfg: QuadratureConfig = DEFAULT,
                        return_error: bool = False):
    """E[log2(1 + gain A^2)] under the KG law, by adaptive quadrature.

    ``gain`` is the linear product beta_B^2 P_s / N_o.
    """
    if not gain > 0:
        raise ValueError("gain must be positive")
    value, err = _capacity_on_power_axis(_power_log_density_kg(kg), gain, kg.omega, cfg)
    return (value, err) if return_error else value


def eav_capacity_quad(eav: MixtureGamma, gain: float, cfg: QuadratureConfig = DEFAULT,
                      return_error: bool = False):
    """E[log2(1 + gain |h_E|^2)] under an MG envelope, by adaptive quadrature."""
    if not gain > 0:
        raise ValueError("gain must be positive")
    value, err = 0.0, 0.0
    for a, b in eav.terms:
        # On the power axis each envelope term 2 a x^(2b-1) e^(-c x^2) dx
        # becomes a y^(b-1) e^(-c y) dy.
        logf = _power_log_density_term(b, eav.c)
        center = max(b, 1.0) / eav.c
        v, e = _capacity_on_power_axis(logf, gain, center, cfg, log_scale=math.log(a))
        value += v
        err += e
    return (value, err) if return_error else value
