"""Command-line experiment harness.

Subcommands
-----------
esc       closed-form / quadrature / Monte Carlo ESC over a sweep, as CSV
mc        the same with the Monte Carlo method only
validate  cross-check the closed form against both oracles
fit       KG moment-matching parameters for every N in the sweep
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from pathlib import Path

from .capacity import (
    EscResult,
    Method,
    eav_capacity_cf,
    ergodic_secrecy_capacity_quad,
    legit_capacity_cf,
)
from .cascade import ModelFitError, cascade_moments, fit_cascade
from .config import ConfigError, ExperimentConfig, load_config
from .montecarlo import simulate_many
from .plotting import plot_csv
from .specfun import ContourError, ConvergenceError

CSV_COLUMNS = ("N", "beta_B_sq_dB", "beta_E_sq_dB", "method", "cb", "ce", "cs", "ci_halfwidth")
QUAD_REL_TOL = 1e-5


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, int):
        return str(x)
    return f"{x:.9g}"


def closed_form_point(cfg: ExperimentConfig, N, bb_db, be_db, xi_scale: float = 1.0) -> EscResult:
    scn = cfg.scenario(N, bb_db, be_db)
    kg = fit_cascade(scn.hop_a, scn.hop_r, scn.N)
    if xi_scale != 1.0:
        kg = replace(kg, xi=kg.xi * xi_scale)
    cb = legit_capacity_cf(kg, scn.gain_b)
    ce = eav_capacity_cf(scn.eav, scn.gain_e)
    return EscResult.from_parts(cb, ce, Method.CLOSED_FORM)


def _map(fn, items, workers: int):
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(it) for it in items]


def evaluate(cfg: ExperimentConfig, methods=None, xi_scale: float = 1.0) -> dict:
    """Results keyed by method name, each a list aligned with ``cfg.grid()``."""
    methods = methods or cfg.methods
    grid = cfg.grid()
    out = {}
    for method in methods:
        if method == "closed_form":
            out[method] = _map(lambda p: closed_form_point(cfg, *p, xi_scale=xi_scale),
                               grid, cfg.mc.workers)
        elif method == "quadrature":
            out[method] = _map(lambda p: ergodic_secrecy_capacity_quad(cfg.scenario(*p)),
                               grid, cfg.mc.workers)
        elif method == "monte_carlo":
            out[method] = simulate_many([cfg.scenario(*p) for p in grid], cfg.mc)
        else:
            raise ConfigError(f"unknown method {method!r}")
    return out


def to_csv(cfg: ExperimentConfig, results: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for i, (N, bb, be) in enumerate(cfg.grid()):
        for method, res in results.items():
            r = res[i]
            w.writerow([fmt(int(N)), fmt(bb), fmt(be), method, fmt(r.cb), fmt(r.ce), fmt(r.cs),
                        fmt(r.ci_halfwidth)])
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _load(args) -> ExperimentConfig:
    cfg = load_config(args.config)
    methods = None
    if getattr(args, "method", None):
        methods = [args.method]
    return cfg.with_overrides(methods=methods, seed=args.seed, trials=args.trials,
                              workers=args.workers)


def cmd_esc(args) -> int:
    cfg = _load(args)
    if args.command == "mc":
        cfg = cfg.with_overrides(methods=["mc"])
    text = to_csv(cfg, evaluate(cfg))
    _emit(text, args.out)
    if args.plot:
        if not args.out:
            raise ConfigError("--plot needs --out (the plot is rendered from the CSV file)")
        plot_csv(args.out, args.plot, cfg.plot_kind or "bar")
    return 0


def cmd_fit(args) -> int:
    cfg = _load(args)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("N", "k_A", "m_A", "Xi", "Omega_A", "mu2", "mu4", "mu6"))
    for N in cfg.N_values:
        mom = cascade_moments(cfg.hop_a, cfg.hop_r, N)
        kg = fit_cascade(cfg.hop_a, cfg.hop_r, N)
        w.writerow([N] + [fmt(v) for v in (kg.k, kg.m, kg.xi, kg.omega, mom.mu2, mom.mu4, mom.mu6)])
    _emit(buf.getvalue(), args.out)
    return 0


def _where(cfg, i) -> str:
    N, bb, be = cfg.grid()[i]
    return f"N={N}, beta_B_sq_dB={bb:g}, beta_E_sq_dB={be:g}"


def validation_report(cfg: ExperimentConfig, xi_scale: float = 1.0,
                      run_mc: bool = True) -> tuple[bool, list[str]]:
    """Compare the closed form with quadrature and (optionally) Monte Carlo."""
    methods = ["closed_form", "quadrature"] + (["monte_carlo"] if run_mc else [])
    res = evaluate(cfg, methods, xi_scale=xi_scale)
    cf, quad = res["closed_form"], res["quadrature"]
    lines = []
    ok = True

    for part in ("cb", "ce"):
        errs = [abs(getattr(c, part) - getattr(q, part)) / abs(getattr(q, part)) for c, q in zip(cf, quad)]
        i = max(range(len(errs)), key=errs.__getitem__)
        passed = errs[i] < QUAD_REL_TOL
        ok &= passed
        lines.append(f"{'PASS' if passed else 'FAIL'} closed_form vs quadrature {part}: "
                     f"max rel err {errs[i]:.3e} (tol {QUAD_REL_TOL:g}) at {_where(cfg, i)}")

    if run_mc:
        mc = res["monte_carlo"]
        ratios = [abs(c.cs - m.cs) / m.ci_halfwidth if m.ci_halfwidth > 0 else math.inf
                  for c, m in zip(cf, mc)]
        i = max(range(len(ratios)), key=ratios.__getitem__)
        passed = ratios[i] <= 1.0
        ok &= passed
        lines.append(
            f"{'PASS' if passed else 'FAIL'} closed_form inside Monte Carlo "
            f"{cfg.mc.confidence:.0%} CI ({cfg.mc.trials} trials): worst |cf - mc| = "
            f"{abs(cf[i].cs - mc[i].cs):.3e} vs half-width {mc[i].ci_halfwidth:.3e} at {_where(cfg, i)}"
        )
    lines.append("PASS" if ok else "FAIL")
    return ok, lines


def cmd_validate(args) -> int:
    cfg = _load(args)
    run_mc = args.method in (None, "all", "mc")
    ok, lines = validation_report(cfg, xi_scale=args.corrupt_xi, run_mc=run_mc)
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="risesc",
                                description="Ergodic secrecy capacity of RIS links under MG fading")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, method=True):
        sp.add_argument("--config", required=True,
                        help="YAML config path or preset name (fig2, fig3)")
        sp.add_argument("--out", help="output path (default: stdout)")
        sp.add_argument("--seed", type=int, help="Monte Carlo seed (unsigned 64-bit)")
        sp.add_argument("--trials", type=int, help="Monte Carlo trial count")
        sp.add_argument("--workers", type=int, help="parallel workers")
        if method:
            sp.add_argument("--method", choices=["cf", "quad", "mc", "all"])

    sp = sub.add_parser("esc", help="ESC over the configured sweep, as CSV")
    common(sp)
    sp.add_argument("--plot", help="also render an SVG chart from the CSV")
    sp.set_defaults(func=cmd_esc)

    sp = sub.add_parser("mc", help="Monte Carlo ESC over the configured sweep, as CSV")
    common(sp, method=False)
    sp.add_argument("--plot", help="also render an SVG chart from the CSV")
    sp.set_defaults(func=cmd_esc, method=None)

    sp = sub.add_parser("validate", help="closed form vs quadrature vs Monte Carlo")
    common(sp)
    sp.add_argument("--corrupt-xi", type=float, default=1.0, metavar="FACTOR",
                    help="debug: scale the closed form's Xi by FACTOR (fault injection)")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("fit", help="KG fit parameters per N")
    common(sp, method=False)
    sp.set_defaults(func=cmd_fit, method=None)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ModelFitError, ContourError, ConvergenceError, ValueError, OSError) as exc:
        print(f"risesc {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
