"""
How long does a subchannel stay usable?
=======================================

A secondary user senses a subchannel as free, then transmits until the
primary user comes back. Two primary-traffic models are compared here on the
same 1 s TDMA frame (5 ms sensing, 10 data slots):

* Markov: the channel is re-examined once per slot and stays free with
  probability ``p_stay``.
* Poisson: the primary returns after an exponential time with rate ``lambda``.
"""

import numpy as np

from crspectrum.link_analysis import LinkSpec, SubchannelProfile, packets_pmf
from crspectrum.traffic_models import (
    FramePlan,
    MarkovChainParams,
    PoissonParams,
    markov_availability_pmf,
    poisson_availability_cdf,
)

frame = FramePlan(frame_s=1.0, sensing_s=0.005, slots=10)
print(f"slot length: {frame.slot_s * 1e3:.1f} ms, data phase: {frame.data_s:.3f} s")

# %%
# Markov availability: a geometric number of free slots, truncated at M.
chain = MarkovChainParams(p_stay=0.9, gamma=1.0)
pmf = markov_availability_pmf(chain, frame)
print("\nfree slots  probability")
for m, mass in enumerate(pmf.masses):
    print(f"{m:>10d}  {mass:.6f}")

# %%
# Poisson availability: P(primary back within t).
for lam in (3.0, 30.0):
    cdf = [poisson_availability_cdf(PoissonParams(lam), t) for t in (0.1, 0.5, frame.data_s)]
    print(f"\nlambda={lam:>4}: P(back by 0.1 s, 0.5 s, end) = " + ", ".join(f"{c:.4f}" for c in cdf))

# %%
# Turning time into packets: 10 Mbit/s, 1000-bit packets, 3% loss.
link_of = lambda prof: LinkSpec([prof], 1e7, 1000, 1e5)
mk = SubchannelProfile(chain, loss=0.03)
po = SubchannelProfile(PoissonParams(3.0), loss=0.03)
for name, prof in (("markov", mk), ("poisson", po)):
    p = packets_pmf(prof, frame, link_of(prof))
    print(f"\n{name}: mean packets {p.mean():.0f}, P(>= 3150 packets) = {p.masses[3150:].sum():.4f}")
