"""Critical pumping strengths vs. free spacing for several detunings.

Inputs: one transition-lines CSV per cavity detuning, e.g.
  cavitychain transition-lines --delta-c -2 --grid d0_ratio:47.6:51.4:39 \
      --eta-range 1:200 --out lines_m2.csv
Usage: python fig5.py lines_a.csv [lines_b.csv ...] [out.png]
"""

import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from figs import read_table

args = sys.argv[1:]
out = "fig5.png"
if args and args[-1].endswith(".png"):
    out = args.pop()

fig, ax = plt.subplots(figsize=(5.4, 3.6))
cycle = plt.rcParams["axes.prop_cycle"].by_key()["color"]
for i, path in enumerate(args):
    table = read_table(path)
    table.require("d0_ratio", "eta_pin_min", "eta_sym_max")
    dc = table.metadata.get("param_delta_c", "?")
    x = table.floats("d0_ratio")
    o = np.argsort(x)
    color = cycle[i % len(cycle)]
    ax.plot(x[o], table.floats("eta_pin_min")[o], color=color, lw=1.1,
            label=rf"$\Delta_c/\kappa = {dc}$")
    ax.plot(x[o], table.floats("eta_sym_max")[o], color=color, lw=1.1,
            ls="--")
ax.set_xlabel(r"$d_0/x_0$")
ax.set_ylabel(r"critical $\eta/\kappa$")
ax.set_title("transition lines (solid: pinned appears, dashed: symmetric "
             "destabilizes)")
ax.legend(fontsize=7)
fig.tight_layout()
fig.savefig(out, metadata={"Software": "figs"})
print(out)
