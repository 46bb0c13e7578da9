"""Experiment descriptions and their JSON form.

A scenario file looks like::

    {
      "pool":   {"loss": [...], "p_stay": [...], "gamma": [...], "lambda": [...]},
      "frame":  {"frame_s": 1.0, "sensing_s": 0.005, "slots": 10},
      "access": {"p": 0.2, "q": 0.9, "degree": 3, "links": 5},
      "coding": {"K": 3000, "c": 0.1, "delta": 0.5, "dep_target": 0.01},
      "link":   {"R_0": 1e7, "L": 1000, "W": 1e5},
      "subchannels": 9
    }

Each pool index describes one subchannel under both traffic models.
``gamma`` may be a single number applied to the whole pool. ``subchannels``
is optional and sets the link size used by p-sweeps. The TDMA slot count in
``access`` is taken from ``frame.slots``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path
from typing import Any, Sequence

from .access_model import AccessParams, EfficiencyInputs
from .fountain import SolitonParams
from .link_analysis import LinkSpec, SubchannelProfile, required_packets
from .traffic_models import FramePlan, MarkovChainParams, PoissonParams, ValidationError, _check_probability

MODELS = ("markov", "poisson")
MAX_POOL = 9

LAMBDA_LOW = (3.0, 2.0, 1.0, 2.5, 3.6, 4.0, 6.0, 2.4, 3.2)
LAMBDA_HIGH = (30.0, 20.0, 10.0, 25.0, 36.0, 40.0, 60.0, 24.0, 32.0)
LAMBDA_MODERATE = (18.0, 12.0, 6.0, 15.0, 21.6, 24.0, 36.0, 14.4, 19.2)


@dataclass(frozen=True)
class PoolEntry:
    loss: float
    p_stay: float
    gamma: float
    lam: float

    def profile(self, model: str) -> SubchannelProfile:
        if model == "markov":
            return SubchannelProfile(MarkovChainParams(self.p_stay, self.gamma), self.loss)
        if model == "poisson":
            return SubchannelProfile(PoissonParams(self.lam), self.loss)
        raise ValueError(f"unknown model {model!r}; expected one of {MODELS}")


@dataclass(frozen=True)
class Coding:
    K: int
    c: float
    delta: float
    dep_target: float

    @property
    def needed(self) -> int:
        return required_packets(self.K)


@dataclass(frozen=True)
class Scenario:
    pool: tuple[PoolEntry, ...]
    frame: FramePlan
    access: AccessParams
    coding: Coding
    capacity_bps: float
    packet_bits: int
    bandwidth_hz: float
    subchannels: int | None = None

    @property
    def S_default(self) -> int:
        return self.subchannels if self.subchannels is not None else len(self.pool)

    def link(self, model: str, S: int) -> LinkSpec:
        """Link built from the first ``S`` pool entries."""
        if not 1 <= S <= len(self.pool):
            raise ValidationError("S", f"S >= 1 and <= pool size {len(self.pool)} required, got {S}")
        return LinkSpec(
            [e.profile(model) for e in self.pool[:S]],
            self.capacity_bps,
            self.packet_bits,
            self.bandwidth_hz,
        )

    def efficiency_inputs(self, S: int) -> EfficiencyInputs:
        return EfficiencyInputs(
            self.coding.dep_target, self.coding.K, self.packet_bits, S, self.bandwidth_hz, self.frame.frame_s
        )

    def with_lambdas(self, lambdas: Sequence[float]) -> "Scenario":
        if len(lambdas) != len(self.pool):
            raise ValidationError("pool.lambda", f"expected {len(self.pool)} rates, got {len(lambdas)}")
        pool = tuple(replace(e, lam=float(l)) for e, l in zip(self.pool, lambdas))
        return _validated(replace(self, pool=pool))

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {
            "pool": {
                "loss": [e.loss for e in self.pool],
                "p_stay": [e.p_stay for e in self.pool],
                "gamma": [e.gamma for e in self.pool],
                "lambda": [e.lam for e in self.pool],
            },
            "frame": {"frame_s": self.frame.frame_s, "sensing_s": self.frame.sensing_s, "slots": self.frame.slots},
            "access": {"p": self.access.p, "q": self.access.q, "degree": self.access.degree, "links": self.access.links},
            "coding": {
                "K": self.coding.K,
                "c": self.coding.c,
                "delta": self.coding.delta,
                "dep_target": self.coding.dep_target,
            },
            "link": {"R_0": self.capacity_bps, "L": self.packet_bits, "W": self.bandwidth_hz},
        }
        if self.subchannels is not None:
            d["subchannels"] = self.subchannels
        return d


_SCHEMA = {
    "pool": {"loss", "p_stay", "gamma", "lambda"},
    "frame": {"frame_s", "sensing_s", "slots"},
    "access": {"p", "q", "degree", "links"},
    "coding": {"K", "c", "delta", "dep_target"},
    "link": {"R_0", "L", "W"},
}
_OPTIONAL_TOP = {"subchannels"}


def _section(doc: dict, name: str) -> dict:
    sec = doc.get(name)
    if not isinstance(sec, dict):
        raise ValidationError(name, f"{name}: expected an object, got {sec!r}")
    allowed = _SCHEMA[name]
    unknown = set(sec) - allowed
    if unknown:
        raise ValidationError(f"{name}.{sorted(unknown)[0]}", f"{name}: unknown field(s) {sorted(unknown)}")
    missing = allowed - set(sec)
    if missing and not (name == "pool" and missing == {"gamma"}):
        raise ValidationError(f"{name}.{sorted(missing)[0]}", f"{name}: missing field(s) {sorted(missing)}")
    return sec


def _build(section: str, fn, *args, **kwargs):
    """Call ``fn`` and prefix any ValidationError field with ``section``."""
    try:
        return fn(*args, **kwargs)
    except ValidationError as e:
        field = f"{section}.{e.field}"
        raise ValidationError(field, f"{field}: {e}") from None
    except (TypeError, ValueError) as e:
        raise ValidationError(section, f"{section}: {e}") from None


def _number(field: str, v) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ValidationError(field, f"{field}: expected a number, got {v!r}")
    return float(v)


def _integer(field: str, v) -> int:
    if isinstance(v, bool) or not isinstance(v, (int, float)) or int(v) != v:
        raise ValidationError(field, f"{field}: expected an integer, got {v!r}")
    return int(v)


def _vector(field: str, v, n: int | None) -> list[float]:
    if not isinstance(v, list):
        raise ValidationError(field, f"{field}: expected a list, got {v!r}")
    if n is not None and len(v) != n:
        raise ValidationError(field, f"{field}: length {len(v)} does not match pool size {n}")
    return [_number(f"{field}[{i}]", x) for i, x in enumerate(v)]


def scenario_from_dict(doc: dict) -> Scenario:
    if not isinstance(doc, dict):
        raise ValidationError("<root>", "scenario must be a JSON object")
    unknown = set(doc) - set(_SCHEMA) - _OPTIONAL_TOP
    if unknown:
        raise ValidationError(sorted(unknown)[0], f"unknown top-level field(s) {sorted(unknown)}")

    pool = _section(doc, "pool")
    loss = _vector("pool.loss", pool["loss"], None)
    n = len(loss)
    if not 1 <= n <= MAX_POOL:
        raise ValidationError("pool.loss", f"pool.loss: pool size must be 1..{MAX_POOL}, got {n}")
    p_stay = _vector("pool.p_stay", pool["p_stay"], n)
    lam = _vector("pool.lambda", pool["lambda"], n)
    gamma_raw = pool.get("gamma", 1.0)
    gamma = [_number("pool.gamma", gamma_raw)] * n if not isinstance(gamma_raw, list) else _vector("pool.gamma", gamma_raw, n)
    entries = []
    for i in range(n):
        for name, vec in (("loss", loss), ("p_stay", p_stay), ("gamma", gamma)):
            _build("pool", _check_probability, f"{name}[{i}]", vec[i])
        if not (math.isfinite(lam[i]) and lam[i] >= 0):
            raise ValidationError(f"pool.lambda[{i}]", f"pool.lambda[{i}]: must be finite and >= 0, got {lam[i]!r}")
        entries.append(PoolEntry(loss[i], p_stay[i], gamma[i], lam[i]))

    fr = _section(doc, "frame")
    frame = _build(
        "frame",
        FramePlan,
        _number("frame.frame_s", fr["frame_s"]),
        _number("frame.sensing_s", fr["sensing_s"]),
        _integer("frame.slots", fr["slots"]),
    )

    ac = _section(doc, "access")
    access = _build(
        "access",
        AccessParams,
        p=_number("access.p", ac["p"]),
        q=_number("access.q", ac["q"]),
        slots=frame.slots,
        degree=_integer("access.degree", ac["degree"]),
        links=_integer("access.links", ac["links"]),
    )

    co = _section(doc, "coding")
    coding = Coding(
        _integer("coding.K", co["K"]),
        _number("coding.c", co["c"]),
        _number("coding.delta", co["delta"]),
        _build("coding", _check_probability, "dep_target", _number("coding.dep_target", co["dep_target"])),
    )
    _build("coding", SolitonParams, coding.K, coding.c, coding.delta)

    lk = _section(doc, "link")
    R0 = _number("link.R_0", lk["R_0"])
    L = _integer("link.L", lk["L"])
    W = _number("link.W", lk["W"])

    subchannels = doc.get("subchannels")
    if subchannels is not None:
        subchannels = _integer("subchannels", subchannels)

    return _validated(Scenario(tuple(entries), frame, access, coding, R0, L, W, subchannels))


def _validated(sc: Scenario) -> Scenario:
    try:
        sc.link("markov", len(sc.pool))
    except ValidationError as e:
        field = {"capacity_bps": "link.R_0", "packet_bits": "link.L", "bandwidth_hz": "link.W"}.get(e.field, e.field)
        raise ValidationError(field, f"{field}: {e}") from None
    if sc.subchannels is not None and not 1 <= sc.subchannels <= len(sc.pool):
        raise ValidationError("subchannels", f"subchannels: must lie in 1..{len(sc.pool)}, got {sc.subchannels}")
    return sc


def load_scenario(path) -> Scenario:
    """Parse and validate a scenario file. Raises OSError, json.JSONDecodeError or ValidationError."""
    text = Path(path).read_text()
    return scenario_from_dict(json.loads(text))


def dump_scenario(scenario: Scenario, path) -> None:
    Path(path).write_text(json.dumps(scenario.to_dict(), indent=2) + "\n")


def baseline() -> Scenario:
    """The bundled baseline parameter set (9-subchannel pool, low primary rates)."""
    text = resources.files("crspectrum").joinpath("presets/paper_baseline.json").read_text()
    return scenario_from_dict(json.loads(text))
