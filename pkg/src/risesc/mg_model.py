"""Mixture-Gamma (MG) envelope distributions.

An MG envelope has density

    f(x) = sum_i 2 a_i x**(2 b_i - 1) exp(-c x**2),   x >= 0,

with one rate ``c`` shared by all terms. Its power X**2 is a finite
mixture of Gamma(b_i, rate=c) laws with weights a_i Gamma(b_i) c**-b_i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

NORMALIZATION_TOL = 1e-9


@dataclass(frozen=True)
class MixtureGamma:
    """Mixture-Gamma envelope distribution.

    Attributes
    ----------
    a, b : tuple of float
        Per-term coefficients and shapes, both positive.
    c : float
        Shared exponential rate.
    family : tuple or None
        Exact law this mixture represents, e.g. ``("rice", K)`` or
        ``("nakagami", m)``. Set by the ``fit_*`` constructors and used by
        the Monte Carlo simulator to sample the exact channel.
    """

    a: tuple
    b: tuple
    c: float
    family: tuple | None = None

    def __post_init__(self):
        a = tuple(float(v) for v in self.a)
        b = tuple(float(v) for v in self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", float(self.c))
        if len(a) == 0 or len(a) != len(b):
            raise ValueError("a and b must be non-empty and of equal length")
        if min(a) <= 0 or min(b) <= 0 or not self.c > 0:
            raise ValueError("MG parameters a, b, c must all be positive")
        total = float(np.sum(self.weights_unnormalized()))
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise ValueError(f"MG density is not normalized: sum a Gamma(b) c^-b = {total!r}")

    @property
    def terms(self) -> list[tuple[float, float]]:
        return list(zip(self.a, self.b))

    def weights_unnormalized(self) -> np.ndarray:
        b = np.asarray(self.b)
        return np.exp(np.log(self.a) + special.gammaln(b) - b * math.log(self.c))

    @property
    def weights(self) -> np.ndarray:
        """Mixture weights of the Gamma components of the power."""
        w = self.weights_unnormalized()
        return w / w.sum()


def mg_pdf(dist: MixtureGamma, x):
    """Envelope density at ``x >= 0`` (scalar or array)."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("mg_pdf is defined for x >= 0")
    a = np.asarray(dist.a)[:, None]
    b = np.asarray(dist.b)[:, None]
    xf = x.reshape(1, -1)
    with np.errstate(divide="ignore", invalid="ignore"):
        log_terms = np.log(2 * a) + (2 * b - 1) * np.log(xf) - dist.c * xf**2
        vals = np.exp(log_terms)
    # x = 0: the term is 0 for b > 1/2, 2a for b = 1/2, unbounded below.
    zero = xf == 0
    if np.any(zero):
        at0 = np.where(b > 0.5, 0.0, np.where(b == 0.5, 2 * a, np.inf))
        vals = np.where(zero, at0, vals)
    out = vals.sum(axis=0).reshape(x.shape)
    return float(out) if out.ndim == 0 else out


def mg_cdf(dist: MixtureGamma, x):
    """Envelope CDF: sum of weighted regularized lower incomplete gammas."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("mg_cdf is defined for x >= 0")
    b = np.asarray(dist.b)[:, None]
    w = dist.weights_unnormalized()[:, None]
    out = (w * special.gammainc(b, dist.c * x.reshape(1, -1) ** 2)).sum(axis=0).reshape(x.shape)
    return float(out) if out.ndim == 0 else out


def mg_envelope_moment(dist: MixtureGamma, n) -> float:
    """E[X**n] = sum a_i Gamma(b_i + n/2) c**-(b_i + n/2)."""
    if n < 0:
        raise ValueError("moment order must be nonnegative")
    b = np.asarray(dist.b)
    h = b + 0.5 * n
    return float(np.sum(np.exp(np.log(dist.a) + special.gammaln(h) - h * math.log(dist.c))))


def fit_rice(K: float, M: int = 20) -> MixtureGamma:
    """M-term MG approximation of a unit-power Rice envelope.

    Shapes are b_n = n and the rate is c = 1 + K. The coefficients are
    proportional to

        delta(K, n) = K**(n-1) (1+K)**n / (exp(K) ((n-1)!)**2)

    and normalized so the density integrates to one. All factors are
    formed in log-space, so large ``K`` and ``M`` do not overflow.

    Parameters
    ----------
    K : float
        Rice factor, linear scale, ``K >= 0``.
    M : int
        Number of mixture terms, ``M >= 1``.
    """
    if K < 0 or not math.isfinite(K):
        raise ValueError("Rice factor must be finite and >= 0")
    if int(M) != M or M < 1:
        raise ValueError("term count M must be a positive integer")
    M = int(M)
    n = np.arange(1, M + 1, dtype=float)
    c = 1.0 + K
    if K == 0:
        # Only the n = 1 term survives (K**0 = 1): plain Rayleigh.
        return MixtureGamma(a=(1.0,), b=(1.0,), c=1.0, family=("rice", 0.0))
    log_delta = (n - 1) * math.log(K) + n * math.log1p(K) - K - 2 * special.gammaln(n)
    log_w = log_delta + special.gammaln(n) - n * math.log(c)
    log_norm = special.logsumexp(log_w)
    a = np.exp(log_delta - log_norm)
    # Drop terms that underflowed to zero; they carry no mass.
    keep = a > 0
    return MixtureGamma(a=tuple(a[keep]), b=tuple(n[keep]), c=c, family=("rice", float(K)))


def fit_nakagami(m: float) -> MixtureGamma:
    """Single-term MG for a unit-power Nakagami-m envelope (m >= 1/2)."""
    if not m >= 0.5:
        raise ValueError("Nakagami shape must satisfy m >= 0.5")
    log_a = m * math.log(m) - special.gammaln(m)
    if log_a > 700:
        raise ValueError(f"Nakagami shape m={m} too large: coefficient overflows")
    a = math.exp(log_a)
    return MixtureGamma(a=(a,), b=(float(m),), c=float(m), family=("nakagami", float(m)))


def fit_rayleigh(mean_power: float = 1.0) -> MixtureGamma:
    """Rayleigh envelope with E[X^2] = ``mean_power``."""
    if not mean_power > 0:
        raise ValueError("mean power must be positive")
    c = 1.0 / mean_power
    return MixtureGamma(a=(c,), b=(1.0,), c=c, family=("rayleigh", float(mean_power)))


def db_to_linear(x_db):
    """Power-quantity conversion: 10**(x/10)."""
    return 10.0 ** (x_db / 10.0)
