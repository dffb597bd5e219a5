"""Moments of the phase-aligned RIS cascade and its K-Gamma (KG) fit.

The cascade gain is A = sum_{i=1..N} |h_A,i| |h_R,i| with i.i.d. terms.
Its 2nd, 4th and 6th moments are matched to a KG law with density

    f_A(x) = 4 Xi**(k+m) / (Gamma(k) Gamma(m)) x**(k+m-1) K_{k-m}(2 Xi x).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Callable

from .mg_model import MixtureGamma, mg_envelope_moment

MAX_ORDER = 6
# Relative accuracy assumed for input moments when deciding whether k = m.
MOMENT_REL_TOL = 1e-12


class ModelFitError(ValueError):
    """The moment set cannot be represented by a KG distribution."""


@dataclass(frozen=True)
class CascadeMoments:
    mu2: float
    mu4: float
    mu6: float

    def __post_init__(self):
        if not self.mu2 > 0:
            raise ValueError("mu2 must be positive")
        if not self.mu4 > self.mu2**2:
            raise ValueError(f"mu4={self.mu4} must exceed mu2**2={self.mu2**2}")
        # Lyapunov; relative slack for rounding.
        if self.mu4**2 > self.mu2 * self.mu6 * (1 + 1e-12):
            raise ValueError("moments violate mu4**2 <= mu2 * mu6")


@dataclass(frozen=True)
class KGParams:
    """Moment-matched KG parameters; ``k >= m`` by convention."""

    k: float
    m: float
    xi: float
    omega: float

    def __post_init__(self):
        if not (self.k >= self.m > 0 and self.omega > 0):
            raise ValueError(f"invalid KG parameters k={self.k}, m={self.m}, omega={self.omega}")

    @classmethod
    def from_shapes(cls, k: float, m: float, omega: float) -> "KGParams":
        k, m = max(k, m), min(k, m)
        return cls(k=k, m=m, xi=math.sqrt(k * m / omega), omega=omega)


def product_pair_moment(d1: MixtureGamma, d2: MixtureGamma, n: int) -> float:
    """E[(X1 X2)**n] for independent MG envelopes X1, X2."""
    return mg_envelope_moment(d1, n) * mg_envelope_moment(d2, n)


def sum_moments(mu_chi: Callable[[int], float], N: int) -> CascadeMoments:
    """Even moments of a sum of ``N`` i.i.d. terms with raw moments ``mu_chi``.

    Uses the binomial recurrence
    mu_{S_j}(l) = sum_t C(l, t) mu_{S_{j-1}}(l - t) mu_chi(t).
    """
    if int(N) != N or N < 1:
        raise ValueError("N must be a positive integer")
    chi = [float(mu_chi(t)) for t in range(MAX_ORDER + 1)]
    s = list(chi)
    for _ in range(int(N) - 1):
        s = [
            sum(math.comb(order, t) * s[order - t] * chi[t] for t in range(order + 1))
            for order in range(MAX_ORDER + 1)
        ]
    return CascadeMoments(mu2=s[2], mu4=s[4], mu6=s[6])


def cascade_moments(hop_a: MixtureGamma, hop_r: MixtureGamma, N: int) -> CascadeMoments:
    return sum_moments(lambda t: product_pair_moment(hop_a, hop_r, t), N)


def kg_coefficients(mom: CascadeMoments) -> tuple[float, float, float]:
    """Coefficients (a, b, c) of the quadratic whose roots are the KG shapes."""
    m2, m4, m6 = mom.mu2, mom.mu4, mom.mu6
    qa = m6 * m2 + m2**2 * m4 - 2 * m4**2
    qb = m6 * m2 - 4 * m4**2 + 3 * m2**2 * m4
    qc = 2 * m2**2 * m4
    return qa, qb, qc


def kg_fit(mom: CascadeMoments) -> KGParams:
    """Match a KG law to the 2nd/4th/6th moments of the cascade.

    Raises
    ------
    ModelFitError
        If the quadratic has complex roots or a non-positive root.
    """
    qa, qb, qc = kg_coefficients(mom)
    disc = qb * qb - 4 * qa * qc
    # A zero discriminant (k = m) is legitimate; absorb rounding around it.
    # The slack tracks how moment errors propagate through the cancelling terms.
    m2, m4, m6 = mom.mu2, mom.mu4, mom.mu6
    size_a = m6 * m2 + m2**2 * m4 + 2 * m4**2
    size_b = m6 * m2 + 4 * m4**2 + 3 * m2**2 * m4
    slack = MOMENT_REL_TOL * (abs(qb) * size_b + 4 * qc * size_a)
    if abs(disc) <= slack:
        disc = 0.0
    if disc < 0:
        raise ModelFitError(
            f"negative discriminant {disc:.6g} (a={qa:.6g}, b={qb:.6g}, c={qc:.6g})"
        )
    if qa == 0:
        raise ModelFitError("degenerate quadratic: leading coefficient is zero")
    root = math.sqrt(disc)
    k = (-qb + root) / (2 * qa)
    m = (-qb - root) / (2 * qa)
    if not (k > 0 and m > 0):
        raise ModelFitError(f"non-positive KG shape roots k={k:.6g}, m={m:.6g}")
    return KGParams.from_shapes(k, m, mom.mu2)


@functools.lru_cache(maxsize=256)
def fit_cascade(hop_a: MixtureGamma, hop_r: MixtureGamma, N: int) -> KGParams:
    """KG fit of an ``N``-element cascade with the given hop fading."""
    return kg_fit(cascade_moments(hop_a, hop_r, N))
