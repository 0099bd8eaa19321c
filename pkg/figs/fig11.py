"""Pinned chain and its one-period-shifted counterpart on the lattice.

Input: a validity CSV, e.g.
  cavitychain validity --d0-ratio 49.795 --eta 100 --out validity.csv
Usage: python fig11.py validity.csv [out.png]
"""

import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from figs import read_table

csv = sys.argv[1]
out = sys.argv[2] if len(sys.argv) > 2 else "fig11.png"

table = read_table(csv)
table.require("xi1", "xi2", "xi3", "shifted_xi1", "barrier", "e_vib",
              "valid")
row = table.rows[0]
xi = [float(row[f"xi{i}"]) for i in (1, 2, 3)]
shifted = [float(row[f"shifted_xi{i}"]) for i in (1, 2, 3)]

lo = min(xi + shifted) - 3.0
hi = max(xi + shifted) + 3.0
grid = np.linspace(lo, hi, 1200)
lattice = np.cos(0.5 * np.pi * grid) ** 2

fig, ax = plt.subplots(figsize=(6.4, 2.8))
ax.plot(grid, lattice, color="0.7", lw=0.8)
ax.plot(xi, np.cos(0.5 * np.pi * np.array(xi)) ** 2, "o", ms=9,
        color="tab:blue", label="equilibrium")
ax.plot(shifted, np.cos(0.5 * np.pi * np.array(shifted)) ** 2, "o", ms=9,
        mfc="none", color="tab:red", label="shifted by one period")
ax.axvline(0.0, color="k", ls=":", lw=0.8)
ax.set_xlabel(r"position  [$x_0$]")
ax.set_ylabel("optical intensity")
ax.set_title(f"barrier = {float(row['barrier']):.0f},  "
             f"vibrational energy = {float(row['e_vib']):.0f}  "
             f"(valid = {row['valid']})")
ax.legend(fontsize=7, loc="upper right")
fig.tight_layout()
fig.savefig(out, metadata={"Software": "figs"})
print(out)
