"""
Spectral efficiency versus foreign-slot access
==============================================

Secondary users transmit in their own TDMA slot with probability q = 0.9 and
in the other slots with probability p. More foreign-slot traffic means more
chances to deliver but also more collisions; the efficiency peaks in between.
"""

from crspectrum.access_model import optimize_p
from crspectrum.scenario import LAMBDA_HIGH, LAMBDA_LOW, baseline
from crspectrum.sweeps import sweep_p

scenario = baseline()

p_star, no_collision = optimize_p(scenario.access, grid_step=0.005)
print(f"best p = {p_star:.3f}  (P_no_collision = {no_collision:.4f})")

for name, lambdas in (("low", LAMBDA_LOW), ("high", LAMBDA_HIGH)):
    res = sweep_p(scenario, lambda_vector=lambdas, S=9, grid_step=0.05)
    print(f"\n{name} primary rates, S = 9")
    print("   p    SE markov  SE poisson")
    mk = [r for r in res.rows if r.model == "markov"]
    po = [r for r in res.rows if r.model == "poisson"]
    for a, b in zip(mk, po):
        print(f"{a.sweep_var:4.2f}   {a.se:8.4f}   {b.se:8.4f}")
    for line in res.summary():
        print(line)
