"""Four-partite certification map (cavity + individual ions).

Input: a fourpartite-map CSV, as for fig9.  The certified region combines
the violation of inequalities II and IV with nonzero cavity-chain
negativity; pinned-but-uncertified points remain candidates.
Usage: python fig10.py four.csv [out.png]
"""

import os
import sys
import tempfile

from figs import FigureSpec, render
from figs.csvdata import read_table

csv = sys.argv[1]
out = sys.argv[2] if len(sys.argv) > 2 else "fig10.png"

# derive a single categorical column from (branch, fourpartite)
table = read_table(csv)
table.require("delta_c", "eta", "branch", "fourpartite")
rows = []
for r in table.rows:
    if r["branch"] == "symmetric":
        cls = "symmetric"
    elif r["fourpartite"] == "certified":
        cls = "certified"
    elif r["fourpartite"] == "inconclusive":
        cls = "undecided"
    else:
        cls = "no-data"
    rows.append((r["delta_c"], r["eta"], cls,
                 r.get("eta_pin_min", ""), r.get("eta_sym_max", "")))

fd, derived = tempfile.mkstemp(suffix=".csv")
try:
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        fh.write("delta_c,eta,cls,eta_pin_min,eta_sym_max\n")
        for row in rows:
            fh.write(",".join(row) + "\n")
    info = render(FigureSpec(
        csv=derived,
        kind="classification",
        x="delta_c",
        y="eta",
        values=["cls"],
        classes=["no-data", "symmetric", "undecided", "certified"],
        shade_window=True,
        xlabel=r"$\Delta_c/\kappa$",
        ylabel=r"$\eta/\kappa$",
        title="genuine four-partite entanglement certificate",
        out=out,
    ))
finally:
    os.unlink(derived)
print(info.out)
