"""Special functions used by the closed forms and the numerical oracles.

The gamma, Bessel and incomplete-gamma wrappers delegate to
:mod:`scipy.special` and add domain checks. :func:`meijer_g` is a
self-contained Mellin-Barnes contour integrator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, optimize, special


class ContourError(ValueError):
    """No vertical contour separates the two pole families."""


class ConvergenceError(RuntimeError):
    """A numerical integral failed to reach its tolerance."""


def log_gamma(z):
    """Principal branch of log Gamma(z) for real or complex ``z``.

    Raises
    ------
    ValueError
        At the poles z = 0, -1, -2, ...
    """
    zc = np.asarray(z, dtype=complex)
    poles = (zc.imag == 0) & (zc.real <= 0) & (zc.real == np.round(zc.real))
    if np.any(poles):
        raise ValueError(f"log_gamma has a pole at {z!r}")
    out = special.loggamma(zc)
    return out.item() if out.ndim == 0 else out


def bessel_k(nu, x):
    """Modified Bessel function of the second kind, K_nu(x), for x > 0."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("bessel_k requires x > 0")
    out = special.kv(nu, x)
    return out.item() if out.ndim == 0 else out


def log_bessel_k(nu, x):
    """log K_nu(x), finite where K_nu itself overflows a double.

    Uses the exponentially scaled ``kve`` and, where that still
    overflows (large order, small argument), the leading small-argument
    term ``Gamma(|nu|) / 2 * (2/x)**|nu|``.
    """
    nu = abs(float(nu))
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("log_bessel_k requires x > 0")
    with np.errstate(over="ignore", divide="ignore"):
        kve = special.kve(nu, x)
        out = np.log(kve) - x
    bad = ~np.isfinite(out)
    if np.any(bad):
        if nu == 0:
            raise ConvergenceError("log_bessel_k: K_0 overflow")
        xb = x[bad] if x.ndim else x
        out_bad = special.gammaln(nu) - math.log(2.0) + nu * np.log(2.0 / xb)
        if x.ndim:
            out[bad] = out_bad
        else:
            out = out_bad
    return float(out) if np.ndim(out) == 0 else out


def upper_inc_gamma(s, x):
    """Upper incomplete gamma function Gamma(s, x) for s > 0, x >= 0."""
    if s <= 0:
        raise ValueError("upper_inc_gamma requires s > 0")
    if x < 0:
        raise ValueError("upper_inc_gamma requires x >= 0")
    return float(special.gammaincc(s, x) * special.gamma(s))


@dataclass(frozen=True)
class MeijerGSpec:
    """Orders and parameters of G^{m,n}_{p,q}(z | a; b)."""

    m: int
    n: int
    a: tuple = field(default_factory=tuple)
    b: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(float(v) for v in self.a))
        object.__setattr__(self, "b", tuple(float(v) for v in self.b))
        if not (0 <= self.m <= self.q and 0 <= self.n <= self.p):
            raise ValueError(
                f"need 0 <= m <= q and 0 <= n <= p, got m={self.m}, n={self.n}, "
                f"p={self.p}, q={self.q}"
            )
        if not all(math.isfinite(v) for v in self.a + self.b):
            raise ValueError("Meijer G parameters must be finite")

    @property
    def p(self) -> int:
        return len(self.a)

    @property
    def q(self) -> int:
        return len(self.b)

    @property
    def delta(self) -> float:
        """Exponential decay rate, in units of pi, of the contour integrand."""
        return self.m + self.n - 0.5 * (self.p + self.q)

    def strip(self) -> tuple[float, float]:
        """Open interval of admissible Re(s) for the vertical contour."""
        hi = min(self.b[: self.m], default=math.inf)
        lo = max((a - 1.0 for a in self.a[: self.n]), default=-math.inf)
        return lo, hi

    def log_kernel(self, s):
        """log of the Gamma-ratio kernel at complex ``s`` (vectorised)."""
        s = np.asarray(s, dtype=complex)
        out = np.zeros_like(s)
        for bj in self.b[: self.m]:
            out += special.loggamma(bj - s)
        for aj in self.a[: self.n]:
            out += special.loggamma(1.0 - aj + s)
        for bj in self.b[self.m :]:
            out -= special.loggamma(1.0 - bj + s)
        for aj in self.a[self.n :]:
            out -= special.loggamma(aj - s)
        return out


def _pick_sigma(spec: MeijerGSpec, logz: float) -> float:
    lo, hi = spec.strip()
    if lo >= hi:
        raise ContourError(
            f"no separating contour: b-gamma poles start at {hi}, "
            f"a-gamma poles end at {lo}"
        )

    def f(sig):
        return float(np.real(spec.log_kernel(sig))) + sig * logz

    # Unbounded sides: widen until the log-magnitude profile turns upward.
    if math.isinf(lo) and math.isinf(hi):
        lo, hi = -1.0, 1.0
    elif math.isinf(lo):
        lo = hi - 2.0
    elif math.isinf(hi):
        hi = lo + 2.0
    lo_open, hi_open = spec.strip()
    for _ in range(40):
        moved = False
        if math.isinf(lo_open) and f(lo) < f(lo + 1e-3):
            lo = hi - 2.0 * (hi - lo)
            moved = True
        if math.isinf(hi_open) and f(hi) < f(hi - 1e-3):
            hi = lo + 2.0 * (hi - lo)
            moved = True
        if not moved:
            break
    width = hi - lo
    eps = min(1e-3, 1e-3 * width)

    # The real-axis minimum of |kernel * z**s| is the saddle of the integrand.
    res = optimize.minimize_scalar(f, bounds=(lo + eps, hi - eps), method="bounded",
                                   options={"xatol": 1e-6 * max(width, 1.0)})
    sig = float(res.x)
    if not np.isfinite(f(sig)):
        sig = 0.5 * (lo + hi)
    return sig


def meijer_g(spec: MeijerGSpec, z: float, *, sigma: float | None = None,
             log_scale: float = 0.0, rel_tol: float = 1e-10,
             panel_width: float = 1.0, max_panels: int = 4000) -> float:
    r"""Meijer G-function of a positive real argument by contour quadrature.

    Evaluates

    .. math::

        \exp(\text{log\_scale}) \cdot \frac{1}{2\pi i}
        \int_{\sigma - i\infty}^{\sigma + i\infty}
        \frac{\prod_{j\le m}\Gamma(b_j - s)\prod_{j\le n}\Gamma(1 - a_j + s)}
             {\prod_{j>m}\Gamma(1 - b_j + s)\prod_{j>n}\Gamma(a_j - s)}
        z^s\, ds

    along a vertical line whose abscissa separates the poles of the
    ``b``-gammas (to the right) from those of the ``a``-gammas (to the
    left). Repeated parameters are harmless because the contour never
    meets a pole.

    Supported class: ``z > 0`` and ``m + n > (p + q) / 2``, for which the
    integrand decays exponentially along the contour.

    Parameters
    ----------
    spec : MeijerGSpec
    z : float
        Positive argument.
    sigma : float, optional
        Contour abscissa. Chosen automatically at the real-axis saddle
        of the integrand when omitted.
    log_scale : float
        Added to the log of the integrand before exponentiation. Lets
        callers fold in a large prefactor (e.g. ``-log Gamma(k)``) when
        the bare G-value would overflow.
    rel_tol : float
        Relative tolerance per integration panel.
    panel_width : float
        Width in Im(s) of each adaptive panel.
    max_panels : int
        Hard cap on the number of panels before giving up.

    Returns
    -------
    float
        ``exp(log_scale) * G(z)``.

    Raises
    ------
    ContourError
        When no separating abscissa exists or ``sigma`` lies outside the
        admissible strip.
    ConvergenceError
        When the tails do not decay within ``max_panels`` panels or the
        result is lost to cancellation.
    """
    if not z > 0:
        raise ValueError("meijer_g requires z > 0")
    if spec.delta <= 0:
        raise ContourError(
            f"m + n = {spec.m + spec.n} must exceed (p + q)/2 = {(spec.p + spec.q) / 2}"
        )
    logz = math.log(z)
    lo, hi = spec.strip()
    if sigma is None:
        sigma = _pick_sigma(spec, logz)
    elif not lo < sigma < hi:
        raise ContourError(f"sigma={sigma} outside admissible strip ({lo}, {hi})")

    def integrand(t):
        s = complex(sigma, t)
        return np.real(np.exp(spec.log_kernel(s) + s * logz + log_scale))

    def magnitude(t):
        s = complex(sigma, t)
        return math.exp(float(np.real(spec.log_kernel(s))) + sigma * logz + log_scale)

    total = 0.0
    abs_total = 0.0
    err_total = 0.0
    peak = 0.0
    quiet = 0
    for k in range(max_panels):
        t0, t1 = k * panel_width, (k + 1) * panel_width
        # Far-tail panels only need accuracy relative to what is already summed.
        epsabs = 1e-3 * rel_tol * abs_total
        val, err = integrate.quad(integrand, t0, t1, epsabs=epsabs, epsrel=rel_tol, limit=200)
        probe = np.linspace(t0, t1, 5)
        mags = [magnitude(t) for t in probe]
        pmax = max(mags)
        peak = max(peak, pmax)
        total += val
        abs_total += abs(val)
        err_total += err
        if pmax < 1e-16 * peak:
            quiet += 1
            if quiet >= 3:
                break
        else:
            quiet = 0
    else:
        raise ConvergenceError(
            f"contour tails still above 1e-16 x peak after {max_panels} panels"
        )
    result = total / math.pi
    err_total /= math.pi
    if result == 0.0 or err_total > 1e-6 * abs(result) + 1e-300:
        raise ConvergenceError(
            f"meijer_g: error estimate {err_total:.3g} too large for value {result:.6g}"
        )
    return float(result)
