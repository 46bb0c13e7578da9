"""LT fountain codec with the Robust Soliton degree distribution.

An encoded packet is fully described by its 64-bit ``packet_seed`` and its
payload: the degree and neighbor set are regenerated from the seed, so the
on-disk fixture format stores only ``(packet_seed, payload)`` records.
"""

from __future__ import annotations

import json
import math
import random
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import accumulate
from pathlib import Path
from typing import Sequence

import numpy as np

from . import _rng
from .traffic_models import ValidationError


@dataclass(frozen=True)
class SolitonParams:
    k: int
    c: float = 0.1
    delta: float = 0.5

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise ValidationError("k", f"k must be a positive integer: {self.k!r}")
        if not (math.isfinite(self.c) and self.c > 0):
            raise ValidationError("c", f"c must be > 0: {self.c!r}")
        if not (0.0 < self.delta < 1.0):
            raise ValidationError("delta", f"delta must lie in (0, 1): {self.delta!r}")
        object.__setattr__(self, "k", int(self.k))

    @property
    def ripple(self) -> float:
        """R = c * ln(k / delta) * sqrt(k)."""
        return self.c * math.log(self.k / self.delta) * math.sqrt(self.k)

    @property
    def spike(self) -> int:
        """Degree carrying the extra robust-soliton mass, clamped into [1, k]."""
        return min(max(math.floor(self.k / self.ripple), 1), self.k)


@dataclass(frozen=True)
class EncodedPacket:
    packet_seed: int
    degree: int
    neighbors: frozenset[int]
    payload: bytes


@dataclass
class DecodeResult:
    success: bool
    packets: list[bytes | None]

    @property
    def recovered(self) -> int:
        return sum(p is not None for p in self.packets)

    @property
    def missing(self) -> list[int]:
        return [i for i, p in enumerate(self.packets) if p is None]


def ideal_soliton(k: int) -> np.ndarray:
    """rho(1) = 1/k, rho(d) = 1/(d(d-1)); index 0 holds degree 1."""
    d = np.arange(1, k + 1, dtype=float)
    rho = np.empty(k)
    rho[0] = 1.0 / k
    rho[1:] = 1.0 / (d[1:] * (d[1:] - 1.0))
    return rho


def robust_soliton(params: SolitonParams) -> np.ndarray:
    """Robust Soliton masses over degrees 1..k (index 0 is degree 1)."""
    k = params.k
    if k == 1:
        return np.ones(1)
    R = params.ripple
    spike = params.spike
    tau = np.zeros(k)
    d = np.arange(1, spike)
    tau[: spike - 1] = R / (d * k)
    # ln(R/delta) goes negative when R < delta (very small k or c)
    tau[spike - 1] = max(R * math.log(R / params.delta) / k, 0.0)
    mu = ideal_soliton(k) + tau
    return mu / mu.sum()


@lru_cache(maxsize=32)
def _degree_cdf(params: SolitonParams) -> tuple[float, ...]:
    return tuple(accumulate(robust_soliton(params).tolist()))


def packet_structure(packet_seed: int, params: SolitonParams) -> tuple[int, frozenset[int]]:
    """Degree (inverse-CDF draw) and neighbor set regenerated from ``packet_seed``."""
    cdf = _degree_cdf(params)
    rng = random.Random(packet_seed)
    degree = min(bisect_right(cdf, rng.random()) + 1, params.k)
    return degree, frozenset(rng.sample(range(params.k), degree))


def packet_seeds(seed: int, count: int, start: int = 0) -> list[int]:
    return [int(s) for s in _rng.trial_seeds(seed, np.arange(start, start + count))]


def _as_source_array(source) -> np.ndarray:
    if isinstance(source, np.ndarray):
        arr = np.asarray(source, dtype=np.uint8)
        if arr.ndim != 2:
            raise ValueError("source array must be 2-D (k, bytes)")
        return arr
    source = list(source)
    if not source:
        raise ValueError("source must contain at least one packet")
    width = len(source[0])
    if any(len(p) != width for p in source):
        raise ValueError("all source packets must have the same length")
    return np.frombuffer(b"".join(bytes(p) for p in source), dtype=np.uint8).reshape(len(source), width)


def lt_encode(
    source: Sequence[bytes] | np.ndarray,
    count: int,
    seed: int,
    c: float = 0.1,
    delta: float = 0.5,
) -> list[EncodedPacket]:
    src = _as_source_array(source)
    if src.shape[0] == 0:
        raise ValueError("source must contain at least one packet")
    params = SolitonParams(src.shape[0], c, delta)
    out = []
    for ps in packet_seeds(seed, count):
        degree, nbrs = packet_structure(ps, params)
        payload = np.bitwise_xor.reduce(src[sorted(nbrs)], axis=0)
        out.append(EncodedPacket(ps, degree, nbrs, payload.tobytes()))
    return out


def lt_decode(packets: Sequence[EncodedPacket], k: int) -> DecodeResult:
    """Peeling decoder.

    Repeatedly takes a packet with one unresolved neighbor, recovers that
    source, and XORs it out of every other packet that covers it. Stops when
    all ``k`` sources are known or no degree-one packet remains.
    """
    if packets:
        width = len(packets[0].payload)
        if any(len(p.payload) != width for p in packets):
            raise ValueError("encoded packets have inconsistent payload lengths")
    else:
        width = 0

    values = [int.from_bytes(p.payload, "little") for p in packets]
    pending = [set(p.neighbors) for p in packets]
    covering: list[list[int]] = [[] for _ in range(k)]
    for i, nbrs in enumerate(pending):
        for j in nbrs:
            if not 0 <= j < k:
                raise ValueError(f"neighbor index {j} out of range for k={k}")
            covering[j].append(i)

    recovered: list[int | None] = [None] * k
    ripple = [i for i, nbrs in enumerate(pending) if len(nbrs) == 1]
    found = 0
    while ripple and found < k:
        i = ripple.pop()
        if len(pending[i]) != 1:
            continue
        (j,) = pending[i]
        if recovered[j] is not None:
            pending[i].clear()
            continue
        val = values[i]
        recovered[j] = val
        found += 1
        for other in covering[j]:
            if j in pending[other]:
                values[other] ^= val
                pending[other].discard(j)
                if len(pending[other]) == 1:
                    ripple.append(other)

    out = [None if v is None else v.to_bytes(width, "little") for v in recovered]
    return DecodeResult(found == k, out)


def measure_dep(
    k: int,
    overhead: float,
    trials: int,
    seed: int,
    c: float = 0.1,
    delta: float = 0.5,
    payload_bytes: int = 8,
) -> float:
    """Empirical decoding failure rate with ``ceil((1 + overhead) k)`` packets.

    Each trial encodes random payloads and checks any successful decode
    byte-for-byte against the source.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials!r}")
    n = math.ceil((1 + Fraction(str(overhead))) * k)
    if n < k:
        return 1.0
    failures = 0
    for t, trial_seed in enumerate(packet_seeds(seed, trials)):
        src = np.random.default_rng(trial_seed).integers(0, 256, size=(k, payload_bytes), dtype=np.uint8)
        result = lt_decode(lt_encode(src, n, trial_seed, c, delta), k)
        if not result.success:
            failures += 1
        elif b"".join(result.packets) != src.tobytes():
            raise AssertionError(f"decoder returned wrong data in trial {t}")
    return failures / trials


def write_fixture(path, packets: Sequence[EncodedPacket], params: SolitonParams, packet_bits: int) -> None:
    """Binary ``(packet_seed u64 LE, payload)`` records plus a JSON sidecar."""
    path = Path(path)
    width = packet_bits // 8
    with path.open("wb") as fh:
        for p in packets:
            if len(p.payload) != width:
                raise ValueError(f"payload of {len(p.payload)} bytes does not match L={packet_bits} bits")
            fh.write(p.packet_seed.to_bytes(8, "little"))
            fh.write(p.payload)
    meta = {"k": params.k, "c": params.c, "delta": params.delta, "L": packet_bits}
    path.with_suffix(".json").write_text(json.dumps(meta, indent=2) + "\n")


def read_fixture(path) -> tuple[SolitonParams, int, list[EncodedPacket]]:
    path = Path(path)
    meta = json.loads(path.with_suffix(".json").read_text())
    params = SolitonParams(meta["k"], meta["c"], meta["delta"])
    width = meta["L"] // 8
    raw = path.read_bytes()
    rec = 8 + width
    if len(raw) % rec:
        raise ValueError(f"{path}: size {len(raw)} is not a multiple of the {rec}-byte record")
    packets = []
    for off in range(0, len(raw), rec):
        ps = int.from_bytes(raw[off : off + 8], "little")
        degree, nbrs = packet_structure(ps, params)
        packets.append(EncodedPacket(ps, degree, nbrs, raw[off + 8 : off + rec]))
    return params, meta["L"], packets
