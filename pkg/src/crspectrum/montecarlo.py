"""Direct-sampling oracle for availability and link success.

Trial ``t`` draws from its own SplitMix64 stream seeded with
``mix(master_seed, t)``. Subchannel ``s`` of that trial reads draws
``s*(M+1) .. s*(M+1)+M``: the first decides the sensing state (Markov) or
the arrival time (Poisson), the rest are the per-slot stay/leave coins. A
link made of the first ``S`` pool entries therefore sees the same samples
for those entries as any larger link, and results never depend on how
trials are split across workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _rng
from .link_analysis import LinkSpec, SubchannelProfile, packets_in
from .traffic_models import FramePlan, MarkovChainParams

GENERATOR_ID = _rng.GENERATOR_ID
CHUNK = 8192
EPS_FLOOR = 1e-6


@dataclass(frozen=True)
class TrialConfig:
    trials: int = 100_000
    master_seed: int = 42

    def __post_init__(self):
        if int(self.trials) != self.trials or self.trials < 1:
            raise ValueError(f"trials must be a positive integer, got {self.trials!r}")
        if not (0 <= int(self.master_seed) < 2**64):
            raise ValueError(f"master_seed must fit in 64 unsigned bits, got {self.master_seed!r}")


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    trials: int

    @classmethod
    def from_bernoulli(cls, successes: int, trials: int) -> "McEstimate":
        mean = successes / trials
        if trials < 2:
            return cls(mean, 0.0, trials)
        var = (successes - successes * successes / trials) / (trials - 1)
        return cls(mean, math.sqrt(max(var, 0.0) / trials), trials)

    @classmethod
    def from_samples(cls, x) -> "McEstimate":
        x = np.asarray(x, dtype=float)
        n = x.size
        se = float(x.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
        return cls(float(x.mean()), se, n)


def _sample_profile(profile: SubchannelProfile, frame: FramePlan, bits: np.ndarray) -> np.ndarray:
    """Available seconds per row of ``bits`` (shape (n, M+1))."""
    model = profile.model
    if isinstance(model, MarkovChainParams):
        u = _rng.uniform_closed_open(bits)
        free_at_sensing = u[:, 0] < model.gamma
        stays = u[:, 1:] < model.p_stay
        prefix = np.cumprod(stays, axis=1).sum(axis=1)
        return np.where(free_at_sensing, frame.slot_time(prefix), 0.0)
    if model.lam == 0.0:
        return np.full(bits.shape[0], frame.data_s)
    tau = -np.log(_rng.uniform_open_closed(bits[:, 0])) / model.lam
    return np.minimum(tau, frame.data_s)


def _available_times(profiles: Sequence[SubchannelProfile], frame: FramePlan, seeds: np.ndarray) -> np.ndarray:
    stride = frame.slots + 1
    out = np.empty((len(seeds), len(profiles)))
    for s, prof in enumerate(profiles):
        bits = _rng.stream_bits(seeds, np.arange(s * stride, (s + 1) * stride))
        out[:, s] = _sample_profile(prof, frame, bits)
    return out


def simulate_available_time(profile: SubchannelProfile, frame: FramePlan, seed: int) -> float:
    """One availability draw from the stream seeded with ``seed``."""
    seeds = np.array([int(seed) & (2**64 - 1)], dtype=np.uint64)
    return float(_available_times([profile], frame, seeds)[0, 0])


def sample_available_times(
    profiles: Sequence[SubchannelProfile], frame: FramePlan, cfg: TrialConfig
) -> np.ndarray:
    """Availability (seconds) for every trial and subchannel, shape (trials, S)."""
    seeds = _rng.trial_seeds(cfg.master_seed, np.arange(cfg.trials))
    return _available_times(profiles, frame, seeds)


def _chunk_successes(link: LinkSpec, frame: FramePlan, needed: int, master_seed: int, lo: int, hi: int) -> int:
    seeds = _rng.trial_seeds(master_seed, np.arange(lo, hi))
    times = _available_times(link.profiles, frame, seeds)
    total = np.zeros(hi - lo, dtype=np.int64)
    for s, prof in enumerate(link.profiles):
        total += packets_in(link.packet_rate(prof), times[:, s])
    return int(np.count_nonzero(total >= needed))


def estimate_success(
    link: LinkSpec,
    frame: FramePlan,
    needed: int,
    cfg: TrialConfig,
    workers: int = 1,
) -> McEstimate:
    """Fraction of trials in which the link delivers at least ``needed`` packets."""
    bounds = [(lo, min(lo + CHUNK, cfg.trials)) for lo in range(0, cfg.trials, CHUNK)]
    if workers <= 1:
        counts = [_chunk_successes(link, frame, needed, cfg.master_seed, lo, hi) for lo, hi in bounds]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(lambda b: _chunk_successes(link, frame, needed, cfg.master_seed, *b), bounds))
    return McEstimate.from_bernoulli(sum(counts), cfg.trials)


def agreement_check(analytic: float, estimate: McEstimate, k_sigma: float) -> bool:
    if not k_sigma > 0:
        raise ValueError(f"k_sigma must be > 0, got {k_sigma!r}")
    return abs(analytic - estimate.mean) <= k_sigma * max(estimate.std_error, EPS_FLOOR)
