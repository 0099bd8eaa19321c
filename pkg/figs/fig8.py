"""Tripartite classification of the reduced three-ion state.

Input: a tripartite-map CSV over (delta_c, eta) at fixed d0, e.g.
  cavitychain tripartite-map --d0-ratio 48.99 \
      --grid delta_c:-9:-0.3:50 --grid eta:2:200:50 --out tri.csv
Usage: python fig8.py tri.csv [out.png]
"""

import sys

from figs import FigureSpec, render

csv = sys.argv[1]
out = sys.argv[2] if len(sys.argv) > 2 else "fig8.png"

info = render(FigureSpec(
    csv=csv,
    kind="classification",
    x="delta_c",
    y="eta",
    values=["trip_ions"],
    classes=["separable", "biseparable-two-cuts", "biseparable-one-cut",
             "genuine-tripartite"],
    shade_window=True,
    xlabel=r"$\Delta_c/\kappa$",
    ylabel=r"$\eta/\kappa$",
    title="three-ion reduced state",
    out=out,
))
print(info.out)
