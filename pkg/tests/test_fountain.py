import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crspectrum.fountain import (
    EncodedPacket,
    SolitonParams,
    ideal_soliton,
    lt_decode,
    lt_encode,
    measure_dep,
    packet_structure,
    read_fixture,
    robust_soliton,
    write_fixture,
)
from crspectrum.traffic_models import ValidationError


def random_source(k, width, seed=0):
    rng = np.random.default_rng(seed)
    return [bytes(rng.integers(0, 256, width, dtype=np.uint8)) for _ in range(k)]


def xor(*chunks):
    out = bytearray(len(chunks[0]))
    for c in chunks:
        for i, b in enumerate(c):
            out[i] ^= b
    return bytes(out)


class TestSoliton:
    def test_ideal_k4(self):
        np.testing.assert_allclose(ideal_soliton(4), [1 / 4, 1 / 2, 1 / 6, 1 / 12], rtol=1e-15)

    def test_spike_position(self):
        params = SolitonParams(3000, 0.1, 0.5)
        # 0.1 * ln(6000) * sqrt(3000) = 47.6492..., 3000 / R = 62.96
        assert params.ripple == pytest.approx(47.64920466943598, rel=1e-12)
        assert params.spike == 62
        mu = robust_soliton(params)
        assert mu[61] > mu[60] and mu[61] > mu[62]

    def test_k1_point_mass(self):
        assert robust_soliton(SolitonParams(1)).tolist() == [1.0]

    @settings(max_examples=300, deadline=None)
    @given(k=st.integers(1, 5000), c=st.floats(0.01, 1.0), delta=st.floats(1e-6, 0.999999))
    def test_valid_distribution(self, k, c, delta):
        mu = robust_soliton(SolitonParams(k, c, delta))
        assert len(mu) == k
        assert (mu >= 0).all()
        assert abs(mu.sum() - 1.0) <= 1e-12

    @pytest.mark.parametrize("args", [(0, 0.1, 0.5), (10, 0.0, 0.5), (10, 0.1, 1.0), (10, 0.1, 0.0)])
    def test_invalid(self, args):
        with pytest.raises(ValidationError):
            SolitonParams(*args)


class TestEncode:
    def test_payload_is_xor_of_neighbors(self):
        src = random_source(20, 16)
        for pkt in lt_encode(src, 50, seed=3):
            assert len(pkt.neighbors) == pkt.degree
            assert all(0 <= j < 20 for j in pkt.neighbors)
            assert pkt.payload == xor(*(src[j] for j in pkt.neighbors))
            if pkt.degree == 1:
                (j,) = pkt.neighbors
                assert pkt.payload == src[j]

    def test_deterministic(self):
        src = random_source(30, 8)
        assert lt_encode(src, 40, seed=9) == lt_encode(src, 40, seed=9)
        assert lt_encode(src, 40, seed=9) != lt_encode(src, 40, seed=10)

    def test_structure_from_seed(self):
        src = random_source(30, 8)
        params = SolitonParams(30)
        for pkt in lt_encode(src, 20, seed=1):
            assert packet_structure(pkt.packet_seed, params) == (pkt.degree, pkt.neighbors)

    def test_single_source(self):
        src = [b"\x01\x02\x03"]
        for pkt in lt_encode(src, 5, seed=0):
            assert pkt.degree == 1 and pkt.payload == src[0]

    def test_empty_source(self):
        with pytest.raises(ValueError):
            lt_encode([], 3, seed=0)

    def test_unequal_source(self):
        with pytest.raises(ValueError):
            lt_encode([b"ab", b"c"], 3, seed=0)


class TestDecode:
    def test_identity_packets(self):
        src = random_source(10, 12)
        pkts = [EncodedPacket(i, 1, frozenset({i}), src[i]) for i in reversed(range(10))]
        res = lt_decode(pkts, 10)
        assert res.success and res.packets == src

    def test_uncovered_index(self):
        src = random_source(6, 4)
        pkts = [EncodedPacket(i, 1, frozenset({i}), src[i]) for i in range(6) if i != 4]
        pkts.append(EncodedPacket(99, 2, frozenset({0, 1}), xor(src[0], src[1])))
        res = lt_decode(pkts, 6)
        assert not res.success
        assert res.missing == [4] and res.recovered == 5

    def test_single(self):
        res = lt_decode([EncodedPacket(0, 1, frozenset({0}), b"zz")], 1)
        assert res.success and res.packets == [b"zz"]

    def test_peeling_chain(self):
        a, b, c = b"\x01", b"\x02", b"\x04"
        pkts = [
            EncodedPacket(0, 3, frozenset({0, 1, 2}), xor(a, b, c)),
            EncodedPacket(1, 2, frozenset({1, 2}), xor(b, c)),
            EncodedPacket(2, 1, frozenset({2}), c),
        ]
        assert lt_decode(pkts, 3).packets == [a, b, c]

    def test_inconsistent_lengths(self):
        pkts = [EncodedPacket(0, 1, frozenset({0}), b"ab"), EncodedPacket(1, 1, frozenset({1}), b"c")]
        with pytest.raises(ValueError, match="inconsistent"):
            lt_decode(pkts, 2)

    @settings(max_examples=100, deadline=None)
    @given(k=st.integers(1, 120), extra=st.integers(0, 60), seed=st.integers(0, 2**64 - 1), cut=st.integers(0, 40))
    def test_monotone_in_packet_set(self, k, extra, seed, cut):
        src = random_source(k, 4, seed % 1000)
        pkts = lt_encode(src, k + extra, seed)
        fewer = pkts[: max(0, len(pkts) - cut)]
        if lt_decode(fewer, k).success:
            assert lt_decode(pkts, k).success


class TestDep:
    def test_too_few_packets(self):
        assert measure_dep(50, -0.1, 5, seed=1) == 1.0

    def test_large_overhead(self):
        assert measure_dep(500, 1.0, 200, seed=2024) <= 0.01

    def test_monotone_in_overhead(self):
        trials = 100
        deps = [measure_dep(100, o, trials, seed=5) for o in (0.05, 0.3, 0.8)]
        for lo, hi in zip(deps, deps[1:]):
            slack = 3 * math.sqrt(max(hi * (1 - hi), 1 / trials) / trials)
            assert lo >= hi - slack


class TestFixture:
    def test_round_trip(self, tmp_path):
        src = random_source(25, 125)  # L = 1000 bits
        pkts = lt_encode(src, 40, seed=77)
        path = tmp_path / "lt.bin"
        write_fixture(path, pkts, SolitonParams(25), 1000)
        assert path.stat().st_size == 40 * (8 + 125)
        params, L, back = read_fixture(path)
        assert params == SolitonParams(25) and L == 1000
        assert back == pkts

    def test_truncated(self, tmp_path):
        pkts = lt_encode(random_source(5, 2), 3, seed=1)
        path = tmp_path / "lt.bin"
        write_fixture(path, pkts, SolitonParams(5), 16)
        path.write_bytes(path.read_bytes()[:-1])
        with pytest.raises(ValueError):
            read_fixture(path)
