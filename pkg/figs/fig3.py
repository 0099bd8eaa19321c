"""Localization phase diagram over pump depth and cooperativity.

Input: a (cooperativity x pump_depth) scan CSV, e.g.
  cavitychain phase-diagram --d0-ratio 49.98 \
      --grid cooperativity:0.05:1:40 --grid pump_depth:1:4000:60 \
      --out fbar.csv
Optionally a transition-lines CSV over cooperativity adds the critical
curves (converted to pump depth as C * eta^2).
Usage: python fig3.py fbar.csv [lines.csv] [out.png]
"""

import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from figs import read_table
from figs.csvdata import grid_matrix

csv = sys.argv[1]
lines_csv = sys.argv[2] if len(sys.argv) > 2 else None
out = sys.argv[3] if len(sys.argv) > 3 else "fig3.png"

table = read_table(csv)
table.require("cooperativity", "pump_depth", "f_bar")
xs, ys, mat = grid_matrix(table, "pump_depth", "cooperativity", "f_bar")

fig, ax = plt.subplots(figsize=(5.2, 3.6))
im = ax.imshow(mat.T, origin="lower", aspect="auto",
               extent=(xs[0], xs[-1], ys[0], ys[-1]), cmap="viridis")
fig.colorbar(im, ax=ax, label=r"$\bar f$")
if lines_csv:
    lines = read_table(lines_csv)
    lines.require("cooperativity", "eta_pin_min", "eta_sym_max")
    c = lines.floats("cooperativity")
    for col in ("eta_pin_min", "eta_sym_max"):
        eta = lines.floats(col)
        ax.plot(c * eta ** 2, c, color="r", lw=1.0)
ax.set_xlabel(r"$C\,\eta^2/\kappa^2$")
ax.set_ylabel(r"$C$")
ax.set_title("localization across the sliding-pinned transition")
fig.tight_layout()
fig.savefig(out, metadata={"Software": "figs"})
print(out)
