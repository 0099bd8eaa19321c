"""Deeply pinned configurations and critical pumping vs. free spacing.

Inputs: a 1D d0_ratio scan at strong pumping (panel a) and a
transition-lines CSV over the same range (panel b), e.g.
  cavitychain phase-diagram --eta 400 --grid d0_ratio:47.6:51.4:77 \
      --out pinned.csv
  cavitychain transition-lines --grid d0_ratio:47.6:51.4:39 \
      --eta-range 1:120 --out lines.csv
Usage: python fig4.py pinned.csv lines.csv [out.png]
"""

import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from figs import read_table

pinned_csv, lines_csv = sys.argv[1], sys.argv[2]
out = sys.argv[3] if len(sys.argv) > 3 else "fig4.png"

fig, (ax_a, ax_b) = plt.subplots(2, 1, figsize=(5.4, 5.6), sharex=True)

pinned = read_table(pinned_csv)
pinned.require("d0_ratio", "xi1", "xi2", "xi3", "structure")
d0 = pinned.floats("d0_ratio")
order = np.argsort(d0)
for col in ("xi1", "xi2", "xi3"):
    ax_a.plot(d0[order], pinned.floats(col)[order], ".-", ms=3, lw=0.8)
structure = np.array(pinned.strings("structure"))[order]
defect = structure == "defect"
if defect.any():
    ax_a.plot(d0[order][defect], np.full(defect.sum(), ax_a.get_ylim()[0]),
              "s", ms=2, color="0.4", label="defect")
    ax_a.legend(fontsize=7, loc="center left")
ax_a.set_ylabel(r"positions  [$x_0$]")
ax_a.set_title("deeply pinned configurations (uniform / defect alternation)")

lines = read_table(lines_csv)
lines.require("d0_ratio", "eta_pin_min", "eta_sym_max")
x = lines.floats("d0_ratio")
o = np.argsort(x)
ax_b.plot(x[o], lines.floats("eta_pin_min")[o], color="r", lw=1.2,
          label=r"pinned appears")
ax_b.plot(x[o], lines.floats("eta_sym_max")[o], color="darkred", lw=1.2,
          label=r"symmetric destabilizes")
ax_b.fill_between(x[o], lines.floats("eta_pin_min")[o],
                  lines.floats("eta_sym_max")[o], color="mistyrose")
ax_b.set_xlabel(r"$d_0/x_0$")
ax_b.set_ylabel(r"$\eta/\kappa$")
ax_b.legend(fontsize=7)
fig.tight_layout()
fig.savefig(out, metadata={"Software": "figs"})
print(out)
