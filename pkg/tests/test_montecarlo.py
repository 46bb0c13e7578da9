import math

import numpy as np
import pytest

from crspectrum import _rng
from crspectrum.link_analysis import LinkSpec, SubchannelProfile, link_pmf, success_probability
from crspectrum.montecarlo import (
    McEstimate,
    TrialConfig,
    agreement_check,
    estimate_success,
    sample_available_times,
    simulate_available_time,
)
from crspectrum.traffic_models import FramePlan, MarkovChainParams, PoissonParams, markov_availability_pmf

FRAME = FramePlan(1.0, 0.005, 10)


def markov(p, g=1.0, loss=0.0):
    return SubchannelProfile(MarkovChainParams(p, g), loss)


def poisson(lam, loss=0.0):
    return SubchannelProfile(PoissonParams(lam), loss)


def link(*profiles):
    return LinkSpec(profiles, 1e7, 1000, 1e5)


class TestSplitMix:
    def test_reference_vector(self):
        # first outputs of SplitMix64 seeded with 1234567 (published reference sequence)
        out = _rng.stream_bits(np.array([1234567], dtype=np.uint64), np.arange(3))[0]
        assert [int(x) for x in out] == [6457827717110365317, 3203168211198807973, 9817491932198370423]

    def test_matches_scalar_loop(self):
        mask = (1 << 64) - 1

        def scalar(seed, n):
            out = []
            for _ in range(n):
                seed = (seed + 0x9E3779B97F4A7C15) & mask
                z = seed
                z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & mask
                z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & mask
                out.append(z ^ (z >> 31))
            return out

        seeds = [0, 1, 2**64 - 1, 0xDEADBEEF]
        got = _rng.stream_bits(np.array(seeds, dtype=np.uint64), np.arange(6))
        assert [[int(x) for x in row] for row in got] == [scalar(s, 6) for s in seeds]

    def test_uniform_ranges(self):
        bits = np.array([0, 2**64 - 1], dtype=np.uint64)
        assert _rng.uniform_open_closed(bits).tolist() == [2.0**-53, 1.0]
        assert _rng.uniform_closed_open(bits).tolist() == [0.0, 1.0 - 2.0**-53]


class TestSimulateAvailableTime:
    @pytest.mark.parametrize("seed", [0, 1, 2**63 + 5])
    def test_markov_degenerate(self, seed):
        assert simulate_available_time(markov(1.0), FRAME, seed) == FRAME.data_s
        assert simulate_available_time(markov(0.4, g=0.0), FRAME, seed) == 0.0

    def test_poisson_zero_rate(self):
        assert simulate_available_time(poisson(0.0), FRAME, 9) == FRAME.data_s

    def test_poisson_mean(self):
        # E[min(tau, D)] = integral_0^D exp(-3t) dt, evaluated with mpmath quadrature
        expected = 0.3164868321502884
        t = sample_available_times([poisson(3.0)], FRAME, TrialConfig(100_000, 5))[:, 0]
        est = McEstimate.from_samples(t)
        assert abs(est.mean - expected) <= 3 * est.std_error

    def test_markov_slot_histogram(self):
        chain = MarkovChainParams(0.8, 0.7)
        t = sample_available_times([SubchannelProfile(chain)], FRAME, TrialConfig(100_000, 8))[:, 0]
        counts = np.bincount(np.rint(t / FRAME.slot_s).astype(int), minlength=11)
        expected = markov_availability_pmf(chain, FRAME).masses * 100_000
        chi2 = ((counts - expected) ** 2 / expected).sum()
        assert chi2 < 35  # 10 dof, p ~ 1e-4

    def test_scalar_matches_batch(self):
        cfg = TrialConfig(5, 77)
        prof = markov(0.7, 0.9)
        batch = sample_available_times([prof], FRAME, cfg)[:, 0]
        seeds = _rng.trial_seeds(77, np.arange(5))
        assert [simulate_available_time(prof, FRAME, int(s)) for s in seeds] == batch.tolist()


class TestEstimateSuccess:
    def test_deterministic_link(self):
        est = estimate_success(link(markov(1.0), poisson(0.0, 0.5)), FRAME, 3150, TrialConfig(1000, 1))
        assert est == McEstimate(1.0, 0.0, 1000)

    def test_reproducible_and_worker_independent(self):
        l = link(markov(0.8, loss=0.03), poisson(3.0, 0.04))
        cfg = TrialConfig(30_000, 42)
        a = estimate_success(l, FRAME, 9000, cfg)
        b = estimate_success(l, FRAME, 9000, cfg)
        c = estimate_success(l, FRAME, 9000, cfg, workers=4)
        assert a == b == c
        assert estimate_success(l, FRAME, 9000, TrialConfig(30_000, 43)) != a

    def test_agrees_with_analytic(self):
        l = link(markov(0.76, loss=0.01), poisson(2.5, 0.02), markov(0.9, 0.8, 0.05))
        analytic = success_probability(link_pmf(l, FRAME), 12000)
        est = estimate_success(l, FRAME, 12000, TrialConfig(100_000, 3))
        assert agreement_check(analytic, est, 4)

    def test_convergence_rate(self):
        l = link(poisson(3.0, 0.03))
        small = estimate_success(l, FRAME, 3150, TrialConfig(20_000, 1))
        big = estimate_success(l, FRAME, 3150, TrialConfig(80_000, 1))
        assert big.std_error / small.std_error == pytest.approx(0.5, rel=0.2)


class TestAgreementCheck:
    def test_examples(self):
        assert agreement_check(0.5, McEstimate(0.5, 0.01, 100), 3)
        assert not agreement_check(0.5, McEstimate(0.6, 0.01, 100), 3)
        assert agreement_check(1.0, McEstimate(1.0, 0.0, 100), 3)

    def test_bad_k(self):
        with pytest.raises(ValueError):
            agreement_check(0.5, McEstimate(0.5, 0.1, 10), 0)


def test_bernoulli_stderr():
    est = McEstimate.from_bernoulli(30, 100)
    assert est.std_error == pytest.approx(math.sqrt(0.3 * 0.7 * 100 / 99 / 100))
