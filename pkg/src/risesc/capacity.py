"""Closed-form ergodic capacities and the ergodic secrecy capacity."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from scipy import special

from .cascade import KGParams, fit_cascade
from .mg_model import MixtureGamma
from .specfun import MeijerGSpec, meijer_g

LN2 = math.log(2.0)


class Method(str, enum.Enum):
    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"
    MONTE_CARLO = "monte_carlo"


@dataclass(frozen=True)
class Scenario:
    """One RIS link: ``N`` elements, hop and eavesdropper fading, linear gains."""

    N: int
    hop_a: MixtureGamma
    hop_r: MixtureGamma
    eav: MixtureGamma
    beta_b_sq: float = 1.0
    beta_e_sq: float = 1.0
    snr_tx: float = 1.0

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 1:
            raise ValueError("N must be a positive integer")
        if not (self.beta_b_sq > 0 and self.beta_e_sq > 0 and self.snr_tx > 0):
            raise ValueError("gains and transmit SNR must be positive")

    @property
    def gain_b(self) -> float:
        return self.beta_b_sq * self.snr_tx

    @property
    def gain_e(self) -> float:
        return self.beta_e_sq * self.snr_tx


@dataclass(frozen=True)
class EscResult:
    cb: float
    ce: float
    cs: float
    method: Method
    ci_halfwidth: float | None = None

    @classmethod
    def from_parts(cls, cb: float, ce: float, method: Method,
                   ci_halfwidth: float | None = None) -> "EscResult":
        return cls(cb=cb, ce=ce, cs=cb - ce, method=Method(method), ci_halfwidth=ci_halfwidth)


def legit_spec(kg: KGParams) -> MeijerGSpec:
    s = 0.5 * (kg.k + kg.m)
    d = 0.5 * (kg.k - kg.m)
    return MeijerGSpec(m=4, n=1, a=(-s, 1.0 - s), b=(d, -d, -s, -s))


def eav_spec(b: float) -> MeijerGSpec:
    return MeijerGSpec(m=1, n=4, a=(0.0, 0.0, -b, -1.0 - b), b=(0.0, -1.0 - b, -1.0))


def legit_capacity_cf(kg: KGParams, gain: float) -> float:
    """Ergodic capacity of the RIS link in bits/s/Hz.

    C_B = gain**-s Xi**(2s) / (ln2 Gamma(k) Gamma(m))
          * G^{4,1}_{2,4}(Xi**2/gain | -s, 1-s; d, -d, -s, -s)

    with s = (k+m)/2 and d = (k-m)/2. The prefactor is folded into the
    contour integrand in log form because G alone overflows for large N.
    """
    if not gain > 0:
        raise ValueError("gain must be positive")
    s = 0.5 * (kg.k + kg.m)
    z = kg.xi**2 / gain
    log_pref = (-s * math.log(gain) + 2 * s * math.log(kg.xi)
                - special.gammaln(kg.k) - special.gammaln(kg.m))
    return meijer_g(legit_spec(kg), z, log_scale=log_pref) / LN2


def eav_capacity_cf(eav: MixtureGamma, gain: float) -> float:
    """Ergodic capacity of the direct eavesdropper link in bits/s/Hz.

    For each MG term (a, b) with rate c and z = gain / c:

        a c**-b / ln2 * z * G^{1,4}_{4,3}(z | 0, 0, -b, -1-b; 0, -1-b, -1)
    """
    if not gain > 0:
        raise ValueError("gain must be positive")
    z = gain / eav.c
    total = 0.0
    for a, b in eav.terms:
        log_pref = math.log(a) - b * math.log(eav.c) + math.log(z)
        total += meijer_g(eav_spec(b), z, log_scale=log_pref)
    return total / LN2


def ergodic_secrecy_capacity(scn: Scenario) -> EscResult:
    """Closed-form ergodic secrecy capacity (signed, not clamped at zero)."""
    kg = fit_cascade(scn.hop_a, scn.hop_r, scn.N)
    cb = legit_capacity_cf(kg, scn.gain_b)
    ce = eav_capacity_cf(scn.eav, scn.gain_e)
    return EscResult.from_parts(cb, ce, Method.CLOSED_FORM)


def ergodic_secrecy_capacity_quad(scn: Scenario, cfg=None) -> EscResult:
    """Same pipeline with both capacities from direct quadrature."""
    from .quadrature import DEFAULT, eav_capacity_quad, legit_capacity_quad

    cfg = cfg or DEFAULT
    kg = fit_cascade(scn.hop_a, scn.hop_r, scn.N)
    cb = legit_capacity_quad(kg, scn.gain_b, cfg)
    ce = eav_capacity_quad(scn.eav, scn.gain_e, cfg)
    return EscResult.from_parts(cb, ce, Method.QUADRATURE)
