"""Uniform chains vs. defects in the deeply pinned regime.

Sweeping d0/x0 at strong pumping shows the alternation between uniform
configurations (both gaps equal) and defects (gaps differing by one full
lattice period), repeating with period 2 in d0/x0.
"""

import numpy as np

from cavitychain import Branch, classify_structure, default_params, \
    find_equilibria

print(f"{'d0/x0':>7} {'xi1':>9} {'xi2':>8} {'xi3':>8} "
      f"{'gap12':>7} {'gap23':>7}  structure")
for d0 in np.arange(47.5, 51.6, 0.25):
    p = default_params(d0_ratio=float(d0), eta=400.0)
    eqs = {e.branch: e for e in find_equilibria(p)}
    eq = eqs[Branch.BROKEN_LEFT]
    rep = classify_structure(eq, p)
    print(f"{d0:7.2f} {eq.xi[0]:9.3f} {eq.xi[1]:8.3f} {eq.xi[2]:8.3f} "
          f"{rep.gaps[0]:7.3f} {rep.gaps[1]:7.3f}  {rep.structure.value}")

print("\ncritical pumping strengths (bisection):")
from cavitychain import transition_boundaries

for d0 in (48.0, 48.5, 49.0, 49.5, 50.0):
    tb = transition_boundaries(default_params(d0_ratio=d0), (1.0, 60.0))
    tag = "bistable" if tb.bistable else "continuous"
    print(f"  d0/x0 = {d0:5.2f}: pinned from {tb.eta_pin_min:6.2f}, "
          f"symmetric up to {tb.eta_sym_max:6.2f}  ({tag})")
