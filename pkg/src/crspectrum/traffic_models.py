"""Primary-traffic occupancy models and the free time they leave in a frame.

Two models are supported per subchannel:

* a two-state (free/busy) Markov chain sampled once per slot, where the
  secondary user keeps the subchannel only while the chain stays free;
* a Poisson primary process, where the first primary arrival after the
  sensing phase ends the secondary transmission on that subchannel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class ValidationError(ValueError):
    """Raised when a parameter is out of range. ``field`` names the culprit."""

    def __init__(self, field: str, message: str):
        super().__init__(message)
        self.field = field


def _check_probability(field: str, value: float) -> float:
    value = float(value)
    if not (0.0 <= value <= 1.0):
        raise ValidationError(field, f"{field} out of [0,1]: {value!r}")
    return value


@dataclass(frozen=True)
class MarkovChainParams:
    """Free-state persistence ``p_stay`` and sensing prior ``gamma``."""

    p_stay: float
    gamma: float

    def __post_init__(self):
        object.__setattr__(self, "p_stay", _check_probability("p_stay", self.p_stay))
        object.__setattr__(self, "gamma", _check_probability("gamma", self.gamma))

    @property
    def p_leave(self) -> float:
        return 1.0 - self.p_stay

    @property
    def sigma(self) -> tuple[float, float]:
        """Initial distribution over (free, busy)."""
        return (self.gamma, 1.0 - self.gamma)

    @property
    def transition_row(self) -> tuple[float, float]:
        """Transition probabilities out of the free state: (stay free, become busy)."""
        return (self.p_stay, self.p_leave)


@dataclass(frozen=True)
class PoissonParams:
    lam: float

    def __post_init__(self):
        lam = float(self.lam)
        if not (math.isfinite(lam) and lam >= 0.0):
            raise ValidationError("lambda", f"lambda must be finite and >= 0: {self.lam!r}")
        object.__setattr__(self, "lam", lam)


@dataclass(frozen=True)
class FramePlan:
    """TDMA frame: a sensing phase followed by ``slots`` equal data slots."""

    frame_s: float
    sensing_s: float
    slots: int

    def __post_init__(self):
        frame_s, sensing_s = float(self.frame_s), float(self.sensing_s)
        if not (math.isfinite(frame_s) and frame_s > 0):
            raise ValidationError("frame_s", f"frame_s must be > 0: {self.frame_s!r}")
        if not (0.0 <= sensing_s < frame_s):
            raise ValidationError("sensing_s", f"sensing_s must lie in [0, frame_s): {self.sensing_s!r}")
        if int(self.slots) != self.slots or self.slots < 1:
            raise ValidationError("slots", f"slots must be a positive integer: {self.slots!r}")
        object.__setattr__(self, "frame_s", frame_s)
        object.__setattr__(self, "sensing_s", sensing_s)
        object.__setattr__(self, "slots", int(self.slots))

    @property
    def data_s(self) -> float:
        return self.frame_s - self.sensing_s

    @property
    def slot_s(self) -> float:
        return self.data_s / self.slots

    def slot_time(self, m):
        """Duration of ``m`` whole slots; ``slot_time(slots)`` is exactly ``data_s``."""
        return self.data_s * (m / self.slots)


@dataclass(frozen=True)
class AvailabilityPmf:
    """``masses[m]`` is the probability of exactly ``m`` free slots."""

    masses: np.ndarray
    frame: FramePlan

    @property
    def times(self) -> np.ndarray:
        return self.frame.slot_time(np.arange(len(self.masses)))


def validate_markov(p_stay: float, gamma: float) -> MarkovChainParams:
    return MarkovChainParams(p_stay, gamma)


def markov_availability_pmf(chain: MarkovChainParams, frame: FramePlan) -> AvailabilityPmf:
    """Distribution of the number of leading free slots in a frame.

    The subchannel is free at sensing with probability ``gamma``; once the
    chain leaves the free state it is lost for the rest of the frame, so only
    the free-state row of the transition matrix matters.
    """
    M = frame.slots
    p, g = chain.p_stay, chain.gamma
    m = np.arange(M + 1)
    masses = g * p**m * (1.0 - p)
    masses[0] += 1.0 - g
    masses[M] = g * p**M
    return AvailabilityPmf(masses, frame)


def poisson_availability_cdf(params: PoissonParams, t: float) -> float:
    """P(first primary arrival <= t). ``lam == 0`` never arrives."""
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t!r}")
    return float(-math.expm1(-params.lam * t))
