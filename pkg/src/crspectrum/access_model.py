"""Opportunistic TDMA access: secondary collisions and spectral efficiency."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .traffic_models import ValidationError, _check_probability


def _check_count(field: str, value, minimum: int) -> int:
    if int(value) != value or value < minimum:
        raise ValidationError(field, f"{field} must be an integer >= {minimum}: {value!r}")
    return int(value)


@dataclass(frozen=True)
class AccessParams:
    """Transmit probabilities in foreign slots (``p``) and the own slot (``q``).

    ``degree`` is the receiver's neighbor count and ``links`` the number of
    disjoint secondary user links available.
    """

    p: float
    q: float
    slots: int
    degree: int
    links: int

    def __post_init__(self):
        object.__setattr__(self, "p", _check_probability("p", self.p))
        object.__setattr__(self, "q", _check_probability("q", self.q))
        object.__setattr__(self, "slots", _check_count("slots", self.slots, 1))
        # degree 0 would raise (1 - p) to the power -1; rejected rather than guessed
        object.__setattr__(self, "degree", _check_count("degree", self.degree, 1))
        object.__setattr__(self, "links", _check_count("links", self.links, 1))


@dataclass(frozen=True)
class EfficiencyInputs:
    dep: float
    gop_packets: int
    packet_bits: int
    subchannels: int
    bandwidth_hz: float
    frame_s: float

    def __post_init__(self):
        object.__setattr__(self, "dep", _check_probability("dep", self.dep))
        for name in ("gop_packets", "packet_bits", "subchannels"):
            object.__setattr__(self, name, _check_count(name, getattr(self, name), 1))
        for name in ("bandwidth_hz", "frame_s"):
            if not getattr(self, name) > 0:
                raise ValidationError(name, f"{name} must be > 0: {getattr(self, name)!r}")

    @property
    def ceiling(self) -> float:
        """SE with every probability factor equal to one, in bit/s/Hz."""
        return self.gop_packets * self.packet_bits / (self.subchannels * self.bandwidth_hz * self.frame_s)


def _collision(p, q, M, degree, links):
    h = (q * (1 - p) + (M - 1) * p * (2 - p - q)) / M * (1 - p) ** (degree - 1)
    return (1 - h) ** links


def collision_probability(a: AccessParams) -> float:
    return float(_collision(a.p, a.q, a.slots, a.degree, a.links))


def end_to_end_success(p_success: float, p_collision: float) -> float:
    return p_success * (1.0 - p_collision)


def spectral_efficiency(e: EfficiencyInputs, p_success: float, p_collision: float) -> float:
    return (1.0 - e.dep) * (1.0 - p_collision) * p_success * e.ceiling


def p_grid(grid_step: float) -> np.ndarray:
    """``0, step, 2*step, ...`` up to 1, always ending exactly at 1."""
    if not (0.0 < grid_step <= 0.5):
        raise ValueError(f"grid_step must lie in (0, 0.5], got {grid_step!r}")
    n = int(np.floor(1.0 / grid_step + 1e-9))
    grid = np.arange(n + 1) * grid_step
    if not np.isclose(grid[-1], 1.0, rtol=0, atol=1e-12):
        grid = np.append(grid, 1.0)
    grid[-1] = 1.0
    return grid


def optimize_p(
    a: AccessParams,
    grid_step: float = 0.005,
    grid: Sequence[float] | None = None,
) -> tuple[float, float]:
    """Grid search for the foreign-slot probability maximizing ``1 - P_collision``.

    The other spectral-efficiency factors do not depend on ``p``, so the
    same ``p`` also maximizes SE. Ties go to the smallest ``p``. ``a.p`` is
    ignored. Returns ``(p_star, 1 - P_collision(p_star))``.
    """
    ps = p_grid(grid_step) if grid is None else np.asarray(grid, dtype=float)
    if ps.size == 0:
        raise ValueError("empty p grid")
    values = np.array([1.0 - collision_probability(replace(a, p=float(p))) for p in ps])
    # argmax returns the first maximum, i.e. the smallest p on a sorted grid
    order = np.argsort(ps, kind="stable")
    i = order[int(np.argmax(values[order]))]
    return float(ps[i]), float(values[i])
