"""Equilibrium positions across the sliding-pinned transition.

Sweeping the pump strength at d0/x0 = 49.795 (uniform regime), the chain
starts mirror-symmetric, then both symmetric and symmetry-broken
solutions coexist in a bistable window, and finally only the pinned pair
survives with the ions near odd multiples of x0.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from cavitychain import (default_params, find_equilibria,
                         transition_boundaries)

D0 = 49.795
p0 = default_params(d0_ratio=D0)

tb = transition_boundaries(p0, (1.0, 60.0))
print(f"symmetric branch stable up to eta/kappa = {tb.eta_sym_max:.3f}")
print(f"pinned branch exists from     eta/kappa = {tb.eta_pin_min:.3f}")
print("bistable window:", tb.bistable)

etas = np.linspace(1.0, 40.0, 160)
seeds = None
series = {"symmetric": [], "broken-left": [], "broken-right": []}
for eta in etas:
    eqs = find_equilibria(p0.with_(eta=float(eta)), extra_seeds=seeds)
    seeds = [e.xi for e in eqs]
    found = {e.branch.value: e for e in eqs}
    for name, store in series.items():
        eq = found.get(name)
        store.append(eq.xi if eq is not None else [np.nan] * 3)

fig, ax = plt.subplots(figsize=(6, 4))
colors = {"symmetric": "k", "broken-left": "tab:blue",
          "broken-right": "tab:orange"}
for name, store in series.items():
    xs = np.array(store)
    for j in range(3):
        ax.plot(etas, xs[:, j], color=colors[name], lw=1.2,
                label=name if j == 0 else None)
ax.axvspan(tb.eta_pin_min, tb.eta_sym_max, color="0.85",
           label="bistable window")
ax.set_xlabel(r"pump strength $\eta/\kappa$")
ax.set_ylabel(r"ion positions $\xi$  [$x_0$]")
ax.set_title(rf"$d_0/x_0 = {D0}$, $\Delta_c = 0$")
ax.legend(loc="center right", fontsize=8)
fig.tight_layout()
fig.savefig("transition_positions.png", dpi=150)
print("wrote transition_positions.png")
