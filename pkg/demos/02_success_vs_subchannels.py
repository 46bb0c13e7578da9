"""
Success probability versus link size
====================================

Sweeps the number of pooled subchannels S for the three primary-rate presets
(low, moderate, high) and prints the probability of collecting the 3150 LT
packets needed for a 3000-packet GOP, with a Monte-Carlo cross-check.
Pass ``--plot`` to also save ``success_vs_s.png`` (needs matplotlib).
"""

import sys

from crspectrum.montecarlo import TrialConfig
from crspectrum.scenario import LAMBDA_HIGH, LAMBDA_LOW, LAMBDA_MODERATE, baseline
from crspectrum.sweeps import sweep_subchannels

scenario = baseline()
cfg = TrialConfig(trials=20_000, master_seed=42)
presets = {"low": LAMBDA_LOW, "moderate": LAMBDA_MODERATE, "high": LAMBDA_HIGH}

results = {}
for name, lambdas in presets.items():
    res = sweep_subchannels(scenario, lambdas, cfg=cfg)
    results[name] = res
    print(f"\n{name} primary rates")
    print(" S   markov  (MC)      poisson (MC)")
    mk = [r for r in res.rows if r.model == "markov"]
    po = [r for r in res.rows if r.model == "poisson"]
    for a, b in zip(mk, po):
        print(f"{a.sweep_var:>2}   {a.p_success:.4f} ({a.mc_mean:.4f})  {b.p_success:.4f} ({b.mc_mean:.4f})")

# %%
# Markov traffic does not depend on lambda, so its curve is shared; the
# Poisson curve drops as the primary rate grows.
if "--plot" in sys.argv:
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots()
    S = results["low"].column("sweep_var", "markov")
    ax.plot(S, results["low"].column("p_success", "markov"), "k-o", label="markov")
    for name, res in results.items():
        ax.plot(S, res.column("p_success", "poisson"), "--s", label=f"poisson ({name})")
    ax.set_xlabel("subchannels S")
    ax.set_ylabel("P(N_T >= N)")
    ax.legend()
    fig.savefig("success_vs_s.png", dpi=120)
    print("\nsaved success_vs_s.png")
