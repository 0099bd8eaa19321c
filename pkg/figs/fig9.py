"""Combination-inequality violations next to the cavity-chain negativity.

Input: a fourpartite-map CSV over (delta_c, eta), e.g.
  cavitychain fourpartite-map --d0-ratio 48.28 \
      --grid delta_c:-9:-0.3:50 --grid eta:2:200:50 --out four.csv
Usage: python fig9.py four.csv [out.png]
"""

import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np
from matplotlib.colors import BoundaryNorm, ListedColormap

from figs import read_table
from figs.csvdata import grid_matrix

csv = sys.argv[1]
out = sys.argv[2] if len(sys.argv) > 2 else "fig9.png"

table = read_table(csv)
table.require("delta_c", "eta", "vl_ii_iv", "en_cavity_rest")

fig, (ax_a, ax_b) = plt.subplots(1, 2, figsize=(9, 3.6), sharey=True)

xs, ys, flag = grid_matrix(table, "delta_c", "eta", "vl_ii_iv",
                           categorical=True)
grid = np.zeros(flag.shape)
for (i, j), v in np.ndenumerate(flag):
    grid[i, j] = 1.0 if v == "true" else 0.0
cmap = ListedColormap(["#f2f2f2", "#80b1d3"])
ax_a.imshow(grid.T, origin="lower", aspect="auto",
            extent=(xs[0], xs[-1], ys[0], ys[-1]), cmap=cmap,
            norm=BoundaryNorm([-0.5, 0.5, 1.5], cmap.N))
ax_a.set_title("inequalities II and IV simultaneously violated")
ax_a.set_xlabel(r"$\Delta_c/\kappa$")
ax_a.set_ylabel(r"$\eta/\kappa$")

xs, ys, neg = grid_matrix(table, "delta_c", "eta", "en_cavity_rest")
im = ax_b.imshow(neg.T, origin="lower", aspect="auto",
                 extent=(xs[0], xs[-1], ys[0], ys[-1]), cmap="inferno")
fig.colorbar(im, ax=ax_b)
ax_b.set_title(r"$E_N$(cavity | chain)")
ax_b.set_xlabel(r"$\Delta_c/\kappa$")
fig.tight_layout()
fig.savefig(out, metadata={"Software": "figs"})
print(out)
