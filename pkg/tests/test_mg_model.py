import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, special, stats

from risesc.config import load_config
from risesc.mg_model import (
    MixtureGamma,
    db_to_linear,
    fit_nakagami,
    fit_rayleigh,
    fit_rice,
    mg_cdf,
    mg_envelope_moment,
    mg_pdf,
)

K5 = db_to_linear(5.0)
RAYLEIGH = MixtureGamma((1.0,), (1.0,), 1.0)


def rice_pdf(x, K):
    """Exact unit-power Rice envelope density."""
    return (2 * (K + 1) * x * np.exp(-K - (K + 1) * x**2)
            * special.i0(2 * x * np.sqrt(K * (K + 1))))


def test_pdf_anchors():
    assert mg_pdf(RAYLEIGH, 0.0) == 0.0
    assert mg_pdf(RAYLEIGH, 1.0) == pytest.approx(2 * math.exp(-1), rel=1e-15)
    x = np.linspace(0, 4, 41)
    np.testing.assert_allclose(mg_pdf(fit_rayleigh(1.0), x), 2 * x * np.exp(-x**2), rtol=1e-14)


def test_pdf_at_zero_for_half_shape():
    d = fit_nakagami(0.5)
    assert mg_pdf(d, 0.0) == pytest.approx(2 * d.a[0])


def test_rice_fit_integrates_to_one():
    d = fit_rice(K5, 20)
    val, _ = integrate.quad(lambda x: mg_pdf(d, x), 0, np.inf, epsabs=1e-13, epsrel=1e-12)
    assert val == pytest.approx(1.0, abs=1e-6)


def test_rice_fit_close_to_exact_rice():
    d = fit_rice(K5, 20)
    x = np.linspace(0, 5, 20001)
    assert np.max(np.abs(mg_pdf(d, x) - rice_pdf(x, K5))) < 1e-4


def test_rice_zero_is_rayleigh():
    d = fit_rice(0.0, 1)
    assert (d.a, d.b, d.c) == ((1.0,), (1.0,), 1.0)
    assert fit_rice(0.0, 20).terms == [(1.0, 1.0)]


def test_rice_normalization_and_unit_power():
    d = fit_rice(K5, 20)
    n = np.arange(1, 21)
    total = np.sum(np.asarray(d.a) * special.gamma(n) * (1 + K5) ** (-n))
    assert total == pytest.approx(1.0, abs=1e-9)
    assert mg_envelope_moment(d, 2) == pytest.approx(1.0, abs=1e-9)


def test_rice_large_factor_stays_finite():
    d = fit_rice(db_to_linear(20.0), 200)
    assert all(np.isfinite(d.a))
    assert mg_envelope_moment(d, 2) == pytest.approx(1.0, abs=1e-6)


def test_nakagami_fit():
    assert fit_nakagami(1.0).terms == [(1.0, 1.0)]
    d = fit_nakagami(2.0)
    assert (d.a, d.b, d.c) == ((4.0,), (2.0,), 2.0)
    assert mg_envelope_moment(d, 2) == pytest.approx(1.0, rel=1e-15)
    assert mg_envelope_moment(d, 4) == pytest.approx(1.5, rel=1e-14)
    val, _ = integrate.quad(lambda x: x**4 * mg_pdf(d, x), 0, np.inf, epsrel=1e-12)
    assert val == pytest.approx(1.5, rel=1e-10)


def test_nakagami_domain():
    with pytest.raises(ValueError):
        fit_nakagami(0.4)
    with pytest.raises(ValueError):
        fit_nakagami(2000.0)


def test_rayleigh_fit():
    d = fit_rayleigh(2.0)
    assert (d.a, d.b, d.c) == ((0.5,), (1.0,), 0.5)
    assert mg_envelope_moment(d, 2) == pytest.approx(2.0)
    with pytest.raises(ValueError):
        fit_rayleigh(0.0)


def test_rayleigh_moments():
    assert mg_envelope_moment(RAYLEIGH, 2) == pytest.approx(1.0)
    assert mg_envelope_moment(RAYLEIGH, 1) == pytest.approx(math.sqrt(math.pi) / 2, rel=1e-14)
    with pytest.raises(ValueError):
        mg_envelope_moment(RAYLEIGH, -1)


def test_cdf_matches_pdf_integral():
    d = fit_rice(K5, 20)
    for x in (0.2, 0.8, 1.0, 1.7):
        ref, _ = integrate.quad(lambda t: mg_pdf(d, t), 0, x, epsrel=1e-12)
        assert mg_cdf(d, x) == pytest.approx(ref, rel=1e-10)
    assert mg_cdf(d, 0.0) == 0.0
    assert mg_cdf(d, 10.0) == pytest.approx(1.0, abs=1e-12)


def test_cdf_matches_scipy_rice():
    d = fit_rice(K5, 20)
    nu = math.sqrt(K5 / (K5 + 1))
    sd = math.sqrt(0.5 / (K5 + 1))
    x = np.linspace(0.05, 3, 60)
    ref = stats.rice.cdf(x, nu / sd, scale=sd)
    assert np.max(np.abs(mg_cdf(d, x) - ref)) < 1e-5


def test_validation():
    with pytest.raises(ValueError):
        MixtureGamma((1.0,), (1.0,), 2.0)  # not normalized
    with pytest.raises(ValueError):
        MixtureGamma((), (), 1.0)
    with pytest.raises(ValueError):
        MixtureGamma((1.0, 1.0), (1.0,), 1.0)
    with pytest.raises(ValueError):
        MixtureGamma((-1.0,), (1.0,), 1.0)
    with pytest.raises(ValueError):
        mg_pdf(RAYLEIGH, -0.1)
    with pytest.raises(ValueError):
        fit_rice(-1.0)
    with pytest.raises(ValueError):
        fit_rice(1.0, 0)


def test_db_to_linear():
    assert db_to_linear(10.0) == pytest.approx(10.0)
    assert db_to_linear(-10.0) == pytest.approx(0.1)
    assert db_to_linear(0.0) == 1.0


@pytest.mark.parametrize("preset", ["fig2", "fig3"])
def test_preset_fadings_normalized(preset):
    cfg = load_config(preset)
    for d in (cfg.hop_a, cfg.hop_r, cfg.eav):
        assert float(np.sum(d.weights_unnormalized())) == pytest.approx(1.0, abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(K=st.floats(0.0, 60.0), M=st.integers(1, 60))
def test_rice_fit_always_normalized(K, M):
    d = fit_rice(K, M)
    assert abs(float(np.sum(d.weights_unnormalized())) - 1.0) < 1e-9
    assert np.all(np.diff(d.b) > 0)


@settings(max_examples=60, deadline=None)
@given(m=st.floats(0.5, 100.0))
def test_nakagami_unit_power(m):
    assert mg_envelope_moment(fit_nakagami(m), 2) == pytest.approx(1.0, rel=1e-12)
