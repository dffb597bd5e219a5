"""Monte Carlo estimation of the ergodic secrecy capacity.

Samples the phase-aligned cascade A = sum_i |h_A,i| |h_R,i| and the
eavesdropper envelope directly, without the KG approximation. Trials
are split into batches; each batch draws from its own Philox stream
keyed by (seed, link, batch index), so estimates are bit-identical for
any worker count and any grouping of scenarios.

Cascade elements are drawn one at a time and accumulated in element
order, so the first N elements of a longer draw are exactly the draw
for N elements. One sweep over N therefore costs one draw at max(N).
"""

from __future__ import annotations

import enum
import functools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import stats

from .capacity import EscResult, Method, Scenario
from .mg_model import MixtureGamma

_LINK_EVE = 1
_LINK_HOP_A = 2
_LINK_HOP_R = 3
_MASK64 = (1 << 64) - 1


class ChannelSource(str, enum.Enum):
    MG_MIXTURE = "mg_mixture"
    EXACT = "exact_rice_nakagami"


@dataclass(frozen=True)
class McConfig:
    trials: int = 1_000_000
    seed: int = 0
    channel_source: ChannelSource = ChannelSource.MG_MIXTURE
    batches: int = 64
    confidence: float = 0.95
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "channel_source", ChannelSource(self.channel_source))
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.batches < 1:
            raise ValueError("batches must be >= 1")
        if not 0 < self.confidence < 1:
            raise ValueError("confidence must lie in (0, 1)")
        if not 0 <= self.seed <= _MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")

    def batch_sizes(self) -> list[int]:
        nb = min(self.batches, self.trials)
        q, r = divmod(self.trials, nb)
        return [q + (i < r) for i in range(nb)]


def substream(seed: int, link: int, batch: int) -> np.random.Generator:
    """Counter-based generator for one (link, batch) pair."""
    key = (seed & _MASK64) | (((link << 32) | batch) << 64)
    return np.random.Generator(np.random.Philox(key=key))


@functools.lru_cache(maxsize=64)
def alias_table(weights: tuple) -> tuple[np.ndarray, np.ndarray]:
    """Vose alias table (acceptance probabilities, aliases) for ``weights``."""
    k = len(weights)
    p = np.asarray(weights, dtype=float)
    p = p * (k / p.sum())
    prob = np.ones(k)
    alias = np.arange(k)
    small = [i for i in range(k) if p[i] < 1.0]
    large = [i for i in range(k) if p[i] >= 1.0]
    while small and large:
        s, g = small.pop(), large.pop()
        prob[s] = p[s]
        alias[s] = g
        p[g] -= 1.0 - p[s]
        (small if p[g] < 1.0 else large).append(g)
    return prob, alias


def sample_mg_power(dist: MixtureGamma, rng: np.random.Generator, size) -> np.ndarray:
    """Draw X**2 for an MG envelope X: pick a Gamma component, then sample it."""
    b = np.asarray(dist.b)
    if len(b) == 1:
        shape = b[0]
    else:
        prob, alias = alias_table(tuple(dist.weights))
        u = rng.random(size) * len(b)
        col = u.astype(np.intp)
        idx = np.where(u - col < prob[col], col, alias[col])
        shape = b[idx]
    return rng.standard_gamma(shape, size) / dist.c


def sample_mg_envelope(dist: MixtureGamma, rng: np.random.Generator, size=None):
    """Draw MG-distributed envelopes (a float when ``size`` is None)."""
    out = np.sqrt(sample_mg_power(dist, rng, 1 if size is None else size))
    return float(out[0]) if size is None else out


def sample_exact_power(dist: MixtureGamma, rng: np.random.Generator, size) -> np.ndarray:
    """Draw |h|**2 from the exact law the MG fit stands for."""
    if dist.family is None:
        raise ValueError("distribution has no exact family to sample from")
    name, param = dist.family
    if name == "rice":
        nu = math.sqrt(param / (param + 1.0))
        sd = math.sqrt(0.5 / (param + 1.0))
        re = nu + sd * rng.standard_normal(size)
        im = sd * rng.standard_normal(size)
        return re * re + im * im
    if name == "nakagami":
        return rng.standard_gamma(param, size) / param
    if name == "rayleigh":
        return param * rng.standard_exponential(size)
    raise ValueError(f"unknown channel family {name!r}")


def _power_sampler(cfg: McConfig):
    return sample_mg_power if cfg.channel_source is ChannelSource.MG_MIXTURE else sample_exact_power


def cascade_amplitudes(hop_a, hop_r, Ns, n: int, batch: int, cfg: McConfig) -> dict:
    """A for ``n`` trials at every element count in ``Ns``, keyed by N.

    Element j of both hops comes from the j-th block of its hop's stream
    and the sum runs in element order, so each entry is bit-identical to
    a draw made for that N alone.
    """
    draw = _power_sampler(cfg)
    rng_a = substream(cfg.seed, _LINK_HOP_A, batch)
    rng_r = substream(cfg.seed, _LINK_HOP_R, batch)
    wanted = set(Ns)
    amp = np.zeros(n)
    out = {}
    for j in range(1, max(wanted) + 1):
        amp += np.sqrt(draw(hop_a, rng_a, n) * draw(hop_r, rng_r, n))
        if j in wanted:
            out[j] = amp.copy()
    return out


def cascade_power(hop_a, hop_r, N: int, n: int, batch: int, cfg: McConfig) -> np.ndarray:
    """A**2 for ``n`` trials of an ``N``-element cascade."""
    amp = cascade_amplitudes(hop_a, hop_r, [N], n, batch, cfg)[N]
    return amp * amp


def _batch_means(batch: int, n: int, bob_groups, eve_groups, cfg: McConfig):
    draw = _power_sampler(cfg)
    bob = {}
    for hops, by_n in bob_groups.items():
        amps = cascade_amplitudes(*hops, by_n.keys(), n, batch, cfg)
        for N, gains in by_n.items():
            a2 = amps[N] * amps[N]
            bob[(N,) + hops] = {g: float(np.mean(np.log2(1.0 + g * a2))) for g in gains}
    eve = {}
    for key, gains in eve_groups.items():
        e2 = draw(key, substream(cfg.seed, _LINK_EVE, batch), n)
        eve[key] = {g: float(np.mean(np.log2(1.0 + g * e2))) for g in gains}
    return bob, eve


def simulate_many(scenarios: Sequence[Scenario], cfg: McConfig) -> list[EscResult]:
    """Monte Carlo ESC for several scenarios, sharing draws where possible.

    Scenarios with the same hops reuse one cascade sample per batch (the
    largest N, read off at each smaller N) and scenarios with the same
    eavesdropper fading reuse one eavesdropper sample. Each result equals
    what :func:`simulate_esc` returns alone.
    """
    bob_groups: dict = {}
    eve_groups: dict = {}
    for scn in scenarios:
        by_n = bob_groups.setdefault((scn.hop_a, scn.hop_r), {})
        by_n.setdefault(scn.N, set()).add(scn.gain_b)
        eve_groups.setdefault(scn.eav, set()).add(scn.gain_e)
    sizes = cfg.batch_sizes()

    def job(i):
        return _batch_means(i, sizes[i], bob_groups, eve_groups, cfg)

    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            per_batch = list(pool.map(job, range(len(sizes))))
    else:
        per_batch = [job(i) for i in range(len(sizes))]

    w = np.asarray(sizes, dtype=float) / cfg.trials
    nb = len(sizes)
    tq = stats.t.ppf(0.5 * (1.0 + cfg.confidence), nb - 1) if nb > 1 else math.inf
    results = []
    for scn in scenarios:
        bkey = (scn.N, scn.hop_a, scn.hop_r)
        cb_b = np.array([bob[bkey][scn.gain_b] for bob, _ in per_batch])
        ce_b = np.array([eve[scn.eav][scn.gain_e] for _, eve in per_batch])
        cb = float(np.dot(w, cb_b))
        ce = float(np.dot(w, ce_b))
        if nb > 1:
            half = float(tq * np.std(cb_b - ce_b, ddof=1) / math.sqrt(nb))
        else:
            half = math.inf
        results.append(EscResult.from_parts(cb, ce, Method.MONTE_CARLO, ci_halfwidth=half))
    return results


def simulate_esc(scn: Scenario, cfg: McConfig) -> EscResult:
    """Monte Carlo ESC estimate with a batch-means confidence half-width."""
    return simulate_many([scn], cfg)[0]
