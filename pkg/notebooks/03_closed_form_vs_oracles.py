"""
Closed form against quadrature and simulation
=============================================

The KG fit of the cascade, its closed-form ergodic capacity, and two
independent checks: direct quadrature of the same expectation and a
Monte Carlo simulation of the physical cascade.
"""

from risesc import (
    McConfig,
    Scenario,
    db_to_linear,
    ergodic_secrecy_capacity,
    ergodic_secrecy_capacity_quad,
    fit_cascade,
    fit_nakagami,
    fit_rice,
    simulate_esc,
)

hop = fit_rice(db_to_linear(5.0), 20)
eav = fit_nakagami(2.0)

# Moment-matched shapes grow with the number of elements
for N in (1, 4, 16, 32):
    kg = fit_cascade(hop, hop, N)
    print(f"N={N:2d}: k={kg.k:8.3f} m={kg.m:7.3f} Xi={kg.xi:.4f} Omega={kg.omega:9.3f}")

mc_cfg = McConfig(trials=1_000_000, seed=1, confidence=0.99)
print(f"\n{'N':>3} {'closed':>9} {'quad':>9} {'mc':>9} {'+-':>7}")
for N in (4, 8, 16):
    scn = Scenario(N=N, hop_a=hop, hop_r=hop, eav=eav, beta_e_sq=db_to_linear(0.0))
    cf = ergodic_secrecy_capacity(scn)
    q = ergodic_secrecy_capacity_quad(scn)
    mc = simulate_esc(scn, mc_cfg)
    print(f"{N:3d} {cf.cs:9.5f} {q.cs:9.5f} {mc.cs:9.5f} {mc.ci_halfwidth:7.4f}")
