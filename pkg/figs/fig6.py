"""Mode-shape overlaps with the free-chain modes over (d0, eta).

Input: an overlap-map CSV, e.g.
  cavitychain overlap-map --grid d0_ratio:47.6:51.4:40 \
      --grid eta:2:250:40 --out overlaps.csv
Usage: python fig6.py overlaps.csv [out.png]
"""

import sys

from figs import FigureSpec, render

csv = sys.argv[1]
out = sys.argv[2] if len(sys.argv) > 2 else "fig6.png"

info = render(FigureSpec(
    csv=csv,
    kind="heatmap",
    x="d0_ratio",
    y="eta",
    values=["overlap_1", "overlap_2", "overlap_3"],
    titles=[r"$O_1$", r"$O_2$", r"$O_3$"],
    shade_window=True,
    xlabel=r"$d_0/x_0$",
    ylabel=r"$\eta/\kappa$",
    out=out,
))
print(info.out)
