"""
LT fountain coding of a GOP
===========================

Encodes random source packets with the Robust Soliton distribution
(c = 0.1, delta = 0.5), decodes them with the peeling decoder, and measures
how the decoding failure rate falls as the reception overhead grows.
"""

import numpy as np

from crspectrum.fountain import SolitonParams, lt_decode, lt_encode, measure_dep, robust_soliton

params = SolitonParams(k=3000, c=0.1, delta=0.5)
mu = robust_soliton(params)
print(f"R = {params.ripple:.2f}, spike at degree {params.spike}, mean degree {np.arange(1, 3001) @ mu:.2f}")

# %%
# One round trip with 1000-bit packets.
k = 200
src = np.random.default_rng(0).integers(0, 256, (k, 125), dtype=np.uint8)
res = lt_decode(lt_encode(src, 2 * k, seed=1), k)
print(f"\nk={k}, n={2 * k}: success={res.success}, exact={b''.join(res.packets) == src.tobytes()}")

# %%
# Failure rate against overhead for a small block.
print("\noverhead  DEP (k=500, 100 trials)")
for overhead in (0.05, 0.2, 0.4, 0.6, 1.0):
    print(f"{overhead:8.2f}  {measure_dep(500, overhead, 100, seed=3):.2f}")
