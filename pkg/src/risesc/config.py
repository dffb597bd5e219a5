"""Experiment configuration files (YAML) and the shipped presets."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

import numpy as np
import yaml

from .capacity import Scenario
from .mg_model import MixtureGamma, db_to_linear, fit_nakagami, fit_rayleigh, fit_rice
from .montecarlo import McConfig

PRESETS = ("fig2", "fig3")
METHOD_ALIASES = {"cf": "closed_form", "quad": "quadrature", "mc": "monte_carlo"}


class ConfigError(ValueError):
    pass


def build_fading(spec: dict) -> MixtureGamma:
    """Fading preset -> MixtureGamma.

    Accepted forms::

        {family: rice, K_dB: 5, terms: 20}
        {family: nakagami, m: 2}
        {family: rayleigh, mean_power: 1}
        {family: mg, a: [...], b: [...], c: 1.0}
    """
    if not isinstance(spec, dict) or "family" not in spec:
        raise ConfigError(f"fading spec needs a 'family' key: {spec!r}")
    fam = spec["family"]
    try:
        if fam == "rice":
            K = db_to_linear(float(spec["K_dB"])) if "K_dB" in spec else float(spec["K"])
            return fit_rice(K, int(spec.get("terms", 20)))
        if fam == "nakagami":
            return fit_nakagami(float(spec["m"]))
        if fam == "rayleigh":
            return fit_rayleigh(float(spec.get("mean_power", 1.0)))
        if fam == "mg":
            return MixtureGamma(a=tuple(spec["a"]), b=tuple(spec["b"]), c=float(spec["c"]))
    except KeyError as exc:
        raise ConfigError(f"fading spec {spec!r} is missing {exc}") from None
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    raise ConfigError(f"unknown fading family {fam!r}")


def _axis(value, name: str) -> list:
    if isinstance(value, dict):
        try:
            start, stop, step = (float(value[k]) for k in ("start", "stop", "step"))
        except KeyError as exc:
            raise ConfigError(f"sweep.{name} range needs start/stop/step") from exc
        if step <= 0:
            raise ConfigError(f"sweep.{name} step must be positive")
        n = int(np.floor((stop - start) / step + 1e-9)) + 1
        vals = [start + i * step for i in range(max(n, 0))]
    elif isinstance(value, (list, tuple)):
        vals = list(value)
    elif value is None:
        vals = []
    else:
        vals = [value]
    if not vals:
        raise ConfigError(f"sweep.{name} is empty")
    return vals


def _normalize_methods(methods) -> tuple[str, ...]:
    if isinstance(methods, str):
        methods = [methods]
    out = []
    for m in methods or []:
        if m == "all":
            out.extend(["closed_form", "quadrature", "monte_carlo"])
            continue
        m = METHOD_ALIASES.get(m, m)
        if m not in METHOD_ALIASES.values():
            raise ConfigError(f"unknown method {m!r}")
        out.append(m)
    if not out:
        raise ConfigError("methods is empty")
    return tuple(dict.fromkeys(out))


@dataclass(frozen=True)
class ExperimentConfig:
    name: str
    hop_a: MixtureGamma
    hop_r: MixtureGamma
    eav: MixtureGamma
    snr_tx_db: float
    N_values: tuple
    beta_b_db: tuple
    beta_e_db: tuple
    methods: tuple
    mc: McConfig = field(default_factory=McConfig)
    plot_kind: str | None = None

    def __post_init__(self):
        if not (self.N_values and self.beta_b_db and self.beta_e_db):
            raise ConfigError("sweep must be non-empty on every axis")
        if not self.methods:
            raise ConfigError("methods must be non-empty")

    def grid(self):
        """Grid points (N, beta_B^2 dB, beta_E^2 dB) in output order."""
        return list(itertools.product(self.N_values, self.beta_b_db, self.beta_e_db))

    def scenario(self, N: int, bb_db: float, be_db: float) -> Scenario:
        return Scenario(N=N, hop_a=self.hop_a, hop_r=self.hop_r, eav=self.eav,
                        beta_b_sq=db_to_linear(bb_db), beta_e_sq=db_to_linear(be_db),
                        snr_tx=db_to_linear(self.snr_tx_db))

    def with_overrides(self, *, methods=None, seed=None, trials=None, workers=None):
        cfg = self
        if methods is not None:
            cfg = replace(cfg, methods=_normalize_methods(methods))
        mc = cfg.mc
        if seed is not None:
            mc = replace(mc, seed=seed)
        if trials is not None:
            mc = replace(mc, trials=trials)
        if workers is not None:
            mc = replace(mc, workers=workers)
        return replace(cfg, mc=mc)


def parse_config(raw: dict, name: str = "custom") -> ExperimentConfig:
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a mapping")
    scn = raw.get("scenario") or {}
    sweep = raw.get("sweep") or {}
    for key in ("hop_a", "hop_r", "eav"):
        if key not in scn:
            raise ConfigError(f"scenario.{key} is required")
    N_values = tuple(int(v) for v in _axis(sweep.get("N"), "N"))
    if any(n < 1 for n in N_values):
        raise ConfigError("sweep.N values must be positive integers")
    mc_raw = raw.get("mc") or {}
    try:
        mc = McConfig(
            trials=int(mc_raw.get("trials", 100_000)),
            seed=int(mc_raw.get("seed", 0)),
            channel_source=mc_raw.get("channel_source", "mg_mixture"),
            batches=int(mc_raw.get("batches", 64)),
            confidence=float(mc_raw.get("confidence", 0.95)),
            workers=int(mc_raw.get("workers", 1)),
        )
    except ValueError as exc:
        raise ConfigError(f"mc: {exc}") from None
    return ExperimentConfig(
        name=str(raw.get("name", name)),
        hop_a=build_fading(scn["hop_a"]),
        hop_r=build_fading(scn["hop_r"]),
        eav=build_fading(scn["eav"]),
        snr_tx_db=float(scn.get("snr_tx_dB", 0.0)),
        N_values=N_values,
        beta_b_db=tuple(float(v) for v in _axis(sweep.get("beta_B_sq_dB"), "beta_B_sq_dB")),
        beta_e_db=tuple(float(v) for v in _axis(sweep.get("beta_E_sq_dB"), "beta_E_sq_dB")),
        methods=_normalize_methods(raw.get("methods", ["cf"])),
        mc=mc,
        plot_kind=(raw.get("plot") or {}).get("kind"),
    )


def load_config(path_or_preset: str | Path) -> ExperimentConfig:
    """Load a YAML config file, or a shipped preset by name (``fig2``, ``fig3``)."""
    key = str(path_or_preset)
    if key in PRESETS:
        text = resources.files("risesc.presets").joinpath(f"{key}.yaml").read_text("utf-8")
        name = key
    else:
        path = Path(key)
        if not path.is_file():
            raise ConfigError(f"config file not found: {key}")
        text = path.read_text("utf-8")
        name = path.stem
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"invalid YAML in {key}: {exc}") from None
    return parse_config(raw, name)
