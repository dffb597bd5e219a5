"""End-to-end acceptance checks on the fig2 and fig3 sweeps.

Each test records one PASS/FAIL line (printed in the terminal summary)
and then asserts it. Reference values are the published secrecy
capacities for the two sweeps.
"""

import math
import time
from dataclasses import replace

import numpy as np
import pytest

from risesc.capacity import legit_capacity_cf
from risesc.cascade import CascadeMoments, kg_coefficients, kg_fit
from risesc.cli import closed_form_point, evaluate, main
from risesc.config import load_config
from risesc.montecarlo import ChannelSource, simulate_many
from risesc.specfun import MeijerGSpec, bessel_k, meijer_g

TOL = 0.05

# Published secrecy capacity (bits/s/Hz) on the fig2 sweep, by beta_E^2 in dB.
REFERENCE_FIG2 = {
    -5.0: [3.34272, 4.507684643969879, 5.327193755602597, 5.780307297325157,
           6.257356290460929, 6.68391028212764, 7.066345365356715, 7.424168116566778,
           7.732992038083899, 8.01434235305475, 8.272335859659929, 8.51032281490735,
           8.731034537612176, 8.936710677446557],
    0.0: [2.80787, 3.9639555649364207, 4.78346, 5.236578218291699, 5.713627211427471,
          6.1401812030941825, 6.522616286323257, 6.88043903753332, 7.189262959050441,
          7.470613274021294, 7.728606780626472, 7.966593735873894, 8.18730545857872,
          8.392981598413101],
    5.0: [1.77161, 3.017562022568158, 3.837071134200876, 4.290184675923436,
          4.767233669059208, 5.19378766072592, 5.576222743954994, 5.934045495165058,
          6.242869416682178, 6.524219731653031, 6.782213238258209, 7.020200193505631,
          7.2409119162104565, 7.446588056044837],
}

# (beta_B^2 dB, N, beta_E^2 dB) -> published value on the fig3 sweep.
REFERENCE_FIG3 = {(0.0, 32, 0.0): 8.59, (-10.0, 32, 0.0): 5.28, (0.0, 32, 5.0): 7.64}

# Published degradation from beta_E^2 = -5 dB to 0 dB, in percent.
REFERENCE_DEGRADATION = {4: 15.9, 8: 10.2}


@pytest.fixture(scope="module")
def fig2():
    return load_config("fig2")


@pytest.fixture(scope="module")
def fig2_cs(fig2):
    t0 = time.perf_counter()
    res = evaluate(fig2, ["closed_form"])["closed_form"]
    elapsed = time.perf_counter() - t0
    return {p: r.cs for p, r in zip(fig2.grid(), res)}, elapsed


def test_ac1_fig2_reproduction(fig2, fig2_cs, acceptance):
    cs, elapsed = fig2_cs
    misses = []
    worst = (0.0, None)
    for be, ref in REFERENCE_FIG2.items():
        for N, want in zip(fig2.N_values, ref):
            dev = cs[(N, 0.0, be)] - want
            if abs(dev) > TOL:
                misses.append((N, be, dev))
            if abs(dev) > abs(worst[0]):
                worst = (dev, (N, be))
    ok = not misses and elapsed < 60
    detail = (f"{42 - len(misses)}/42 points within +-{TOL}; worst deviation {worst[0]:+.3f} "
              f"at N={worst[1][0]}, beta_E^2={worst[1][1]:g} dB; grid time {elapsed:.1f} s")
    if misses:
        detail += "; misses " + " ".join(f"(N={n},{b:g}dB:{d:+.3f})" for n, b, d in misses)
    assert acceptance("AC1 fig2 closed-form vs published bars", ok, detail), detail


def test_ac2_fig3_spot_checks(acceptance):
    cfg = load_config("fig3")
    parts, ok = [], True
    for (bb, N, be), want in REFERENCE_FIG3.items():
        got = closed_form_point(cfg, N, bb, be).cs
        ok &= abs(got - want) <= TOL
        parts.append(f"(bB={bb:g},N={N},bE={be:g}) {got:.4f} vs {want}")
    detail = "; ".join(parts)
    assert acceptance("AC2 fig3 spot values", ok, detail), detail


def test_ac3_degradation(fig2_cs, acceptance):
    cs, _ = fig2_cs
    parts, ok = [], True
    for N, want in REFERENCE_DEGRADATION.items():
        hi, lo = cs[(N, 0.0, -5.0)], cs[(N, 0.0, 0.0)]
        pct = 100 * (hi - lo) / hi
        ok &= abs(pct - want) <= 0.5
        parts.append(f"N={N} {pct:.2f}% vs {want}%")
    detail = "; ".join(parts) + " (tol 0.5 pp)"
    assert acceptance("AC3 degradation percentages", ok, detail), detail


def test_ac4_oracle_equivalence(acceptance):
    t0 = time.perf_counter()
    worst = {"cb": 0.0, "ce": 0.0}
    count = 0
    for name in ("fig2", "fig3"):
        cfg = load_config(name)
        res = evaluate(cfg, ["closed_form", "quadrature"])
        for c, q in zip(res["closed_form"], res["quadrature"]):
            count += 1
            for part in worst:
                err = abs(getattr(c, part) - getattr(q, part)) / abs(getattr(q, part))
                worst[part] = max(worst[part], err)
    elapsed = time.perf_counter() - t0
    ok = max(worst.values()) < 1e-5 and elapsed < 120
    detail = (f"{count} points; max rel err cb {worst['cb']:.2e}, ce {worst['ce']:.2e} "
              f"(tol 1e-5); {elapsed:.1f} s")
    assert acceptance("AC4 closed form vs quadrature", ok, detail), detail


def test_ac5_monte_carlo(fig2, fig2_cs, acceptance):
    cs, _ = fig2_cs
    cfg = fig2.with_overrides(trials=10_000_000)
    scns = [cfg.scenario(*p) for p in cfg.grid()]
    t0 = time.perf_counter()
    mg = simulate_many(scns, cfg.mc)
    exact = simulate_many(scns, replace(cfg.mc, channel_source=ChannelSource.EXACT))
    elapsed = time.perf_counter() - t0
    ratios = [abs(cs[p] - r.cs) / r.ci_halfwidth for p, r in zip(cfg.grid(), mg)]
    gaps = [abs(a.cs - b.cs) for a, b in zip(mg, exact)]
    i = int(np.argmax(ratios))
    ok = max(ratios) <= 1.0 and max(gaps) < 0.02 and elapsed < 600
    detail = (f"10^7 trials, {cfg.mc.confidence:.0%} CI: worst |cf-mc|/halfwidth {ratios[i]:.2f} "
              f"at {cfg.grid()[i]}; max |mg-exact| {max(gaps):.4f} (tol 0.02); {elapsed:.0f} s")
    assert acceptance("AC5 Monte Carlo consistency", ok, detail), detail


def test_ac6_analytic_anchors(acceptance):
    kg = kg_fit(CascadeMoments(1.0, 4.0, 36.0))
    qa, qb, qc = kg_coefficients(CascadeMoments(1.0, 4.0, 36.0))
    fit_ok = (kg.k, kg.m, kg.xi) == (1.0, 1.0, 1.0) and qb * qb - 4 * qa * qc == 0

    exp_g = MeijerGSpec(1, 0, (), (0,))
    log_g = MeijerGSpec(1, 2, (1, 1), (1, 0))
    bes_g = MeijerGSpec(2, 0, (), (0.5, -0.5))
    worst = 0.0
    for z in np.logspace(-3, 3, 31):
        x = 2 * math.sqrt(z)
        worst = max(worst,
                    abs(meijer_g(exp_g, z, log_scale=z) - 1.0),
                    abs(meijer_g(log_g, z) / math.log1p(z) - 1.0),
                    abs(meijer_g(bes_g, z, log_scale=x) / (2 * bessel_k(1.0, x) * math.exp(x)) - 1.0))

    norms = []
    for name in ("fig2", "fig3"):
        cfg = load_config(name)
        norms += [abs(float(np.sum(d.weights_unnormalized())) - 1.0)
                  for d in (cfg.hop_a, cfg.hop_r, cfg.eav)]
    ok = fit_ok and worst < 1e-7 and max(norms) <= 1e-9
    detail = (f"double-Rayleigh fit k=m=Xi=1 {fit_ok}; G identities max rel err {worst:.1e} "
              f"on [1e-3, 1e3]; MG normalization max err {max(norms):.1e}")
    assert acceptance("AC6 analytic anchors", ok, detail), detail
    assert legit_capacity_cf(kg, 1.0) > 0


def test_ac7_monotonicity(fig2, fig2_cs, acceptance):
    cs, _ = fig2_cs
    Ns = fig2.N_values
    inc_n = dec_e = concave = True
    for be in fig2.beta_e_db:
        row = np.array([cs[(N, 0.0, be)] for N in Ns])
        d = np.diff(row)
        inc_n &= bool(np.all(d > 0))
        concave &= bool(np.all(np.diff(d) <= 0))
    for N in Ns:
        col = [cs[(N, 0.0, be)] for be in fig2.beta_e_db]
        dec_e &= all(a > b for a, b in zip(col, col[1:]))
    ok = inc_n and dec_e and concave
    detail = (f"increasing in N {inc_n}; decreasing in beta_E^2 {dec_e}; "
              f"non-increasing increments {concave}")
    assert acceptance("AC7 monotonicity", ok, detail), detail


def test_ac8_determinism(tmp_path, acceptance):
    outs = {}
    for cmd in ("esc", "mc"):
        for run, workers in enumerate((1, 1, 4)):
            out = tmp_path / f"{cmd}-{run}.csv"
            code = main([cmd, "--config", "fig2", "--out", str(out), "--method", "all",
                         "--trials", "200000", "--seed", "7", "--workers", str(workers)]
                        if cmd == "esc" else
                        [cmd, "--config", "fig2", "--out", str(out), "--trials", "200000",
                         "--seed", "7", "--workers", str(workers)])
            assert code == 0
            outs.setdefault(cmd, []).append(out.read_bytes())
    same = {cmd: len(set(v)) == 1 for cmd, v in outs.items()}
    ok = all(same.values())
    detail = (f"esc (cf+quad+mc) identical over 2 runs and workers 1/4: {same['esc']}; "
              f"mc: {same['mc']}")
    assert acceptance("AC8 determinism", ok, detail), detail
