"""Delivered-packet distributions for a secondary user link.

A subchannel that stays usable for ``t`` seconds delivers
``floor(c * t)`` packets, where ``c = (1 - loss) * R0 / L`` is its packet
rate. Per-subchannel packet-count PMFs are convolved into the PMF of the
link total, from which the probability of collecting at least ``N``
packets follows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

import numpy as np
from scipy import signal

from .traffic_models import (
    FramePlan,
    MarkovChainParams,
    PoissonParams,
    ValidationError,
    _check_probability,
    markov_availability_pmf,
)

# Guards floor() against products such as 1e4 * 0.995 landing at 9949.999...
_FLOOR_EPS = 1e-9

TrafficModel = Union[MarkovChainParams, PoissonParams]


@dataclass(frozen=True)
class SubchannelProfile:
    model: TrafficModel
    loss: float = 0.0

    def __post_init__(self):
        if not isinstance(self.model, (MarkovChainParams, PoissonParams)):
            raise TypeError(f"unsupported traffic model: {type(self.model).__name__}")
        object.__setattr__(self, "loss", _check_probability("loss", self.loss))

    @property
    def kind(self) -> str:
        return "markov" if isinstance(self.model, MarkovChainParams) else "poisson"


@dataclass(frozen=True)
class LinkSpec:
    profiles: tuple[SubchannelProfile, ...]
    capacity_bps: float
    packet_bits: int
    bandwidth_hz: float

    def __post_init__(self):
        object.__setattr__(self, "profiles", tuple(self.profiles))
        if len(self.profiles) < 1:
            raise ValidationError("profiles", "a link needs at least one subchannel (S >= 1)")
        if not self.capacity_bps > 0:
            raise ValidationError("capacity_bps", f"capacity_bps must be > 0: {self.capacity_bps!r}")
        if int(self.packet_bits) != self.packet_bits or self.packet_bits < 1:
            raise ValidationError("packet_bits", f"packet_bits must be a positive integer: {self.packet_bits!r}")
        if not self.bandwidth_hz > 0:
            raise ValidationError("bandwidth_hz", f"bandwidth_hz must be > 0: {self.bandwidth_hz!r}")

    @property
    def S(self) -> int:
        return len(self.profiles)

    def packet_rate(self, profile: SubchannelProfile) -> float:
        """Good packets per second on ``profile`` while it is usable."""
        return (1.0 - profile.loss) * self.capacity_bps / self.packet_bits


@dataclass(frozen=True)
class PacketPmf:
    """PMF over packet counts ``0..k_max``.

    ``dropped`` records mass removed by an optional convolution cutoff; it is
    never folded back in by renormalizing.
    """

    masses: np.ndarray
    dropped: float = field(default=0.0)

    def __post_init__(self):
        m = np.asarray(self.masses, dtype=np.float64)
        if m.ndim != 1 or m.size == 0:
            raise ValueError("masses must be a non-empty 1-D array")
        object.__setattr__(self, "masses", m)

    @classmethod
    def point(cls, k: int) -> "PacketPmf":
        m = np.zeros(k + 1)
        m[k] = 1.0
        return cls(m)

    @property
    def k_max(self) -> int:
        return len(self.masses) - 1

    def total(self) -> float:
        return float(self.masses.sum())

    def mean(self) -> float:
        return float(np.arange(len(self.masses)) @ self.masses)


def packets_in(rate: float, seconds):
    """Whole packets delivered at ``rate`` packets/s in ``seconds``."""
    if np.ndim(seconds):
        return np.floor(rate * np.asarray(seconds) + _FLOOR_EPS).astype(np.int64)
    return math.floor(rate * seconds + _FLOOR_EPS)


def packet_capacity(profile: SubchannelProfile, frame: FramePlan, link: LinkSpec) -> int:
    return packets_in(link.packet_rate(profile), frame.data_s)


def packets_pmf(profile: SubchannelProfile, frame: FramePlan, link: LinkSpec) -> PacketPmf:
    rate = link.packet_rate(profile)
    k_max = packet_capacity(profile, frame, link)
    if isinstance(profile.model, MarkovChainParams):
        avail = markov_availability_pmf(profile.model, frame)
        ks = packets_in(rate, avail.times)
        masses = np.zeros(k_max + 1)
        np.add.at(masses, ks, avail.masses)
        return PacketPmf(masses)

    lam = profile.model.lam
    if k_max == 0 or lam == 0.0:
        return PacketPmf.point(k_max)
    # k packets <=> arrival time in [k/c, (k+1)/c); the top bin also takes
    # every arrival after the data phase ends.
    k = np.arange(k_max)
    masses = np.empty(k_max + 1)
    masses[:-1] = np.exp(-lam * k / rate) * -math.expm1(-lam / rate)
    masses[-1] = math.exp(-lam * k_max / rate)
    return PacketPmf(masses)


def convolve(a: PacketPmf, b: PacketPmf, cutoff: float | None = None) -> PacketPmf:
    """PMF of the sum of two independent packet counts.

    With ``cutoff`` set, masses below it are zeroed and their total is
    added to ``dropped``.
    """
    # scipy picks direct summation for short inputs and FFT for long ones
    out = signal.convolve(a.masses, b.masses, method="auto")
    np.clip(out, 0.0, None, out=out)
    dropped = a.dropped + b.dropped
    if cutoff is not None:
        small = out < cutoff
        dropped += float(out[small].sum())
        out[small] = 0.0
    return PacketPmf(out, dropped)


def link_pmf(link: LinkSpec, frame: FramePlan, cutoff: float | None = None) -> PacketPmf:
    """Total packets over the link; folds left to right over ``link.profiles``."""
    return prefix_pmfs(link, frame, cutoff)[-1]


def prefix_pmfs(link: LinkSpec, frame: FramePlan, cutoff: float | None = None) -> list[PacketPmf]:
    """``out[i]`` is the packet PMF of the link made of the first ``i + 1`` profiles."""
    out = [packets_pmf(link.profiles[0], frame, link)]
    for prof in link.profiles[1:]:
        out.append(convolve(out[-1], packets_pmf(prof, frame, link), cutoff))
    return out


def success_probability(pmf: PacketPmf, needed: int) -> float:
    """P(total packets >= needed)."""
    if needed < 0:
        raise ValueError(f"needed must be >= 0, got {needed!r}")
    if needed > pmf.k_max:
        return 0.0
    return float(min(1.0, max(0.0, pmf.masses[needed:].sum())))


def required_packets(K: int, overhead: float | Fraction = Fraction(1, 20)) -> int:
    """Encoded packets needed for a K-packet GOP, rounded up."""
    if int(K) != K or K < 1:
        raise ValueError(f"K must be a positive integer, got {K!r}")
    n = (1 + Fraction(str(overhead))) * int(K)
    return math.ceil(n)


def profiles_from(models: Sequence[TrafficModel], losses: Sequence[float]) -> list[SubchannelProfile]:
    if len(models) != len(losses):
        raise ValueError("models and losses must have equal length")
    return [SubchannelProfile(m, l) for m, l in zip(models, losses)]
