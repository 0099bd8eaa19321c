"""Ion positions vs. pump strength with the bistable window shaded.

Input: a 1D eta scan CSV produced with --branch-policy all, e.g.
  cavitychain phase-diagram --d0-ratio 49.795 --grid eta:1:40:160 \
      --branch-policy all --out transition.csv
Usage: python fig2.py transition.csv [out.png]
"""

import sys

from figs import FigureSpec, render

csv = sys.argv[1]
out = sys.argv[2] if len(sys.argv) > 2 else "fig2.png"

info = render(FigureSpec(
    csv=csv,
    kind="line",
    x="eta",
    values=["xi1", "xi2", "xi3"],
    group_by="branch",
    shade_window=True,
    xlabel=r"$\eta/\kappa$",
    ylabel=r"ion positions  [$x_0$]",
    title="classical equilibria across the sliding-pinned transition",
    out=out,
))
print(info.out)
