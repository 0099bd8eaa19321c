"""Cavity-mode entanglement and couplings over (detuning, pump).

Inputs: a phase-diagram CSV at fixed d0 plus its resonance-contour CSV:
  cavitychain phase-diagram --d0-ratio 51.44 \
      --grid delta_c:-8:-0.5:50 --grid eta:2:250:50 \
      --out fig7.csv --resonance-out fig7_res.csv
Usage: python fig7.py fig7.csv [fig7_res.csv] [out.png]
"""

import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from figs import read_table
from figs.csvdata import grid_matrix

csv = sys.argv[1]
res_csv = sys.argv[2] if len(sys.argv) > 2 else None
out = sys.argv[3] if len(sys.argv) > 3 else "fig7.png"

table = read_table(csv)
table.require("delta_c", "eta", "en_cavity_mode1", "c_1")

fig, axes = plt.subplots(2, 3, figsize=(11, 6), sharex=True, sharey=True)
for j in (1, 2, 3):
    for row, col in ((0, f"en_cavity_mode{j}"), (1, f"c_{j}")):
        ax = axes[row][j - 1]
        xs, ys, mat = grid_matrix(table, "delta_c", "eta", col)
        if row == 1:
            mat = np.abs(mat)
        im = ax.imshow(mat.T, origin="lower", aspect="auto",
                       extent=(xs[0], xs[-1], ys[0], ys[-1]),
                       cmap="inferno")
        fig.colorbar(im, ax=ax)
        ax.set_title(rf"$E_N$(cav | mode {j})" if row == 0
                     else rf"$|c_{j}|/\kappa$")
        if res_csv:
            res = read_table(res_csv)
            res.require("mode", "delta_c", "eta")
            modes = res.floats("mode")
            sel = modes == j
            ax.plot(res.floats("delta_c")[sel], res.floats("eta")[sel],
                    ".", ms=1.5, color="w", alpha=0.8)
for ax in axes[1]:
    ax.set_xlabel(r"$\Delta_c/\kappa$")
for row in axes:
    row[0].set_ylabel(r"$\eta/\kappa$")
fig.tight_layout()
fig.savefig(out, metadata={"Software": "figs"})
print(out)
