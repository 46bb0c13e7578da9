"""Counter-addressable SplitMix64 streams.

Every Monte-Carlo trial owns an independent SplitMix64 stream whose seed is
``mix(master_seed, trial)``. Because SplitMix64 state advances by a fixed
increment, draw ``j`` of trial ``t`` can be computed directly as
``mix(seed_t + (j + 1) * GOLDEN)``, which lets whole batches of trials be
generated with numpy array arithmetic while staying bit-identical to a
trial-at-a-time loop.
"""

from __future__ import annotations

import numpy as np

GENERATOR_ID = "splitmix64/counter-v1"

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_MASK64 = (1 << 64) - 1


def mix(z):
    """SplitMix64 output function (Stafford variant 13), elementwise on uint64."""
    z = np.asarray(z, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = (z ^ (z >> np.uint64(30))) * _M1
        z = (z ^ (z >> np.uint64(27))) * _M2
        return z ^ (z >> np.uint64(31))


def trial_seeds(master_seed: int, trials) -> np.ndarray:
    """Per-trial stream seeds ``mix(master_seed XOR mix(t))``."""
    master = np.uint64(int(master_seed) & _MASK64)
    t = np.asarray(trials, dtype=np.uint64)
    return mix(master ^ mix(t + GOLDEN))


def stream_bits(seeds: np.ndarray, draws: np.ndarray) -> np.ndarray:
    """Raw 64-bit outputs of draw indices ``draws`` from each stream in ``seeds``.

    ``seeds`` has shape (n,), ``draws`` shape (d,); the result is (n, d).
    """
    seeds = np.asarray(seeds, dtype=np.uint64)[:, None]
    draws = np.asarray(draws, dtype=np.uint64)[None, :]
    with np.errstate(over="ignore"):
        state = seeds + (draws + np.uint64(1)) * GOLDEN
    return mix(state)


def uniform_open_closed(bits: np.ndarray) -> np.ndarray:
    """Map 64-bit words to doubles in (0, 1] using the top 53 bits."""
    return ((bits >> np.uint64(11)).astype(np.float64) + 1.0) * 2.0**-53


def uniform_closed_open(bits: np.ndarray) -> np.ndarray:
    """Map 64-bit words to doubles in [0, 1) using the top 53 bits."""
    return (bits >> np.uint64(11)).astype(np.float64) * 2.0**-53
