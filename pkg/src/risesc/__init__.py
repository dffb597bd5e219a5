"""Ergodic secrecy capacity of RIS-aided links under mixture-Gamma fading."""

from .capacity import (
    EscResult,
    Method,
    Scenario,
    eav_capacity_cf,
    ergodic_secrecy_capacity,
    ergodic_secrecy_capacity_quad,
    legit_capacity_cf,
)
from .cascade import (
    CascadeMoments,
    KGParams,
    ModelFitError,
    cascade_moments,
    fit_cascade,
    kg_fit,
    product_pair_moment,
    sum_moments,
)
from .mg_model import (
    MixtureGamma,
    db_to_linear,
    fit_nakagami,
    fit_rayleigh,
    fit_rice,
    mg_cdf,
    mg_envelope_moment,
    mg_pdf,
)
from .montecarlo import McConfig, sample_mg_envelope, simulate_esc, simulate_many
from .quadrature import QuadratureConfig, eav_capacity_quad, kg_pdf, legit_capacity_quad
from .specfun import (
    ContourError,
    ConvergenceError,
    MeijerGSpec,
    bessel_k,
    log_gamma,
    meijer_g,
    upper_inc_gamma,
)

__version__ = "0.1.0"
