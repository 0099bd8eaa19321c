"""Figure rendering from scan CSV files.

A ``FigureSpec`` names one or more input CSVs, a figure kind (line,
heatmap or classification), column selections, axis labels and optional
overlay polylines; :func:`render` turns it into a PNG.  Rendering is a
pure function of the input bytes: backend, style and output metadata are
pinned so that re-rendering an identical CSV reproduces the image
pixel for pixel.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.colors import BoundaryNorm, ListedColormap

from .csvdata import SchemaError, Table, grid_matrix, read_table

KINDS = ("line", "heatmap", "classification")

# one fixed color per classification slot; exactly four classes per map
CLASS_COLORS = ("#d9d9d9", "#80b1d3", "#fb8072", "#1f3fb4")

_STYLE = {
    "figure.dpi": 100,
    "savefig.dpi": 150,
    "font.size": 9,
    "axes.titlesize": 9,
    "svg.hashsalt": "figs",
}


@dataclass
class Overlay:
    """Extra curve(s) drawn on top of a panel from another CSV."""

    csv: str
    x: str
    y: str
    group_by: str = ""
    style: dict = field(default_factory=lambda: {"color": "w", "ls": ":"})
    scatter: bool = False


@dataclass
class FigureSpec:
    csv: list                  # input CSV path(s); first one is primary
    kind: str                  # line | heatmap | classification
    out: str                   # output image path
    x: str = ""
    y: str = ""                # heatmap/classification: inner axis column
    values: list = field(default_factory=list)   # panel column(s)
    group_by: str = ""         # line kind: one curve set per group
    classes: list = field(default_factory=list)  # classification order
    xlabel: str = ""
    ylabel: str = ""
    titles: list = field(default_factory=list)
    overlays: list = field(default_factory=list)
    shade_window: bool = False  # shade/draw the bistable eta window
    title: str = ""

    def __post_init__(self):
        if isinstance(self.csv, str):
            self.csv = [self.csv]
        if self.kind not in KINDS:
            raise SchemaError(f"unknown figure kind {self.kind!r}; "
                              f"expected one of {KINDS}")
        self.overlays = [o if isinstance(o, Overlay) else Overlay(**o)
                         for o in self.overlays]

    @classmethod
    def from_json(cls, path) -> "FigureSpec":
        with open(path, encoding="utf-8") as fh:
            return cls(**json.load(fh))


@dataclass
class RenderInfo:
    out: str
    kind: str
    n_panels: int
    classes: tuple = ()


def _draw_overlays(ax, overlays):
    for ov in overlays:
        table = read_table(ov.csv)
        xs = table.floats(ov.x)
        ys = table.floats(ov.y)
        if ov.group_by:
            groups = np.array(table.strings(ov.group_by))
            keys = sorted(set(groups))
        else:
            groups = np.array([""] * len(xs))
            keys = [""]
        for key in keys:
            sel = groups == key
            if ov.scatter:
                ax.plot(xs[sel], ys[sel], ".", ms=2, **ov.style)
            else:
                order = np.argsort(xs[sel])
                ax.plot(xs[sel][order], ys[sel][order], **ov.style)


def _window_curves(table: Table, x: str):
    """Per-outer-value bistable window (eta_pin_min, eta_sym_max)."""
    if "eta_pin_min" not in table.columns:
        return None
    xs = table.floats(x)
    pin = table.floats("eta_pin_min")
    sym = table.floats("eta_sym_max")
    out = {}
    for k in range(len(xs)):
        if not np.isnan(pin[k]):
            out[xs[k]] = (pin[k], sym[k])
    if not out:
        return None
    keys = np.array(sorted(out))
    return keys, np.array([out[k][0] for k in keys]), \
        np.array([out[k][1] for k in keys])


def _render_line(spec, table, fig):
    ax = fig.subplots()
    xs = table.floats(spec.x)
    if spec.group_by:
        table.require(spec.group_by)
        groups = np.array(table.strings(spec.group_by))
        keys = sorted(set(groups))
    else:
        groups = np.array([""] * len(xs))
        keys = [""]
    cycle = plt.rcParams["axes.prop_cycle"].by_key()["color"]
    for gi, key in enumerate(keys):
        sel = groups == key
        order = np.argsort(xs[sel])
        for vi, value in enumerate(spec.values):
            ys = table.floats(value)[sel][order]
            ax.plot(xs[sel][order], ys, color=cycle[gi % len(cycle)],
                    lw=1.2, label=key if vi == 0 and key else None)
    if spec.shade_window:
        win = _window_curves(table, spec.x)
        if win is None and "eta" in (spec.x,):
            pass
        if win is not None and spec.x == "eta":
            # 1D eta sweep: a single window shaded across the axis
            ax.axvspan(win[1][0], win[2][0], color="0.88", zorder=0)
    _draw_overlays(ax, spec.overlays)
    if any(k for k in keys):
        ax.legend(fontsize=7)
    return [ax]


def _render_heatmap(spec, table, fig):
    axes = fig.subplots(1, len(spec.values), squeeze=False)[0]
    for ax, value in zip(axes, spec.values):
        xs, ys, mat = grid_matrix(table, spec.x, spec.y, value)
        extent = (xs[0], xs[-1], ys[0], ys[-1])
        im = ax.imshow(mat.T, origin="lower", aspect="auto", extent=extent,
                       cmap="inferno")
        fig.colorbar(im, ax=ax)
        if spec.shade_window and spec.y == "eta":
            win = _window_curves(table, spec.x)
            if win is not None:
                ax.plot(win[0], win[1], color="r", lw=1.0)
                ax.plot(win[0], win[2], color="r", lw=1.0)
        _draw_overlays(ax, spec.overlays)
    return list(axes)


def _render_classification(spec, table, fig):
    if len(spec.classes) != 4:
        raise SchemaError(f"classification maps take exactly 4 classes, "
                          f"got {spec.classes}")
    value = spec.values[0]
    xs, ys, mat = grid_matrix(table, spec.x, spec.y, value,
                              categorical=True)
    index = {name: i for i, name in enumerate(spec.classes)}
    grid = np.zeros(mat.shape)
    for (i, j), name in np.ndenumerate(mat):
        grid[i, j] = index.get(name, 0)
    ax = fig.subplots()
    cmap = ListedColormap(CLASS_COLORS)
    norm = BoundaryNorm(np.arange(-0.5, 4.5), cmap.N)
    extent = (xs[0], xs[-1], ys[0], ys[-1])
    im = ax.imshow(grid.T, origin="lower", aspect="auto", extent=extent,
                   cmap=cmap, norm=norm)
    cbar = fig.colorbar(im, ax=ax, ticks=range(4))
    cbar.ax.set_yticklabels(spec.classes, fontsize=7)
    if spec.shade_window and spec.y == "eta":
        win = _window_curves(table, spec.x)
        if win is not None:
            ax.plot(win[0], win[1], color="r", lw=1.0)
            ax.plot(win[0], win[2], color="r", lw=1.0)
    _draw_overlays(ax, spec.overlays)
    return [ax]


def render(spec: FigureSpec) -> RenderInfo:
    """Render a figure specification to its output image.

    Raises
    ------
    SchemaError
        If the CSV lacks the referenced columns or is empty.
    """
    table = read_table(spec.csv[0])
    needed = [c for c in ([spec.x, spec.y, spec.group_by]
                          + list(spec.values)) if c]
    table.require(*needed)

    with plt.rc_context(_STYLE):
        width = 4.2 * (len(spec.values) if spec.kind == "heatmap" else 1)
        fig = plt.figure(figsize=(max(width, 4.6), 3.4))
        if spec.kind == "line":
            axes = _render_line(spec, table, fig)
        elif spec.kind == "heatmap":
            axes = _render_heatmap(spec, table, fig)
        else:
            axes = _render_classification(spec, table, fig)
        for i, ax in enumerate(axes):
            ax.set_xlabel(spec.xlabel or spec.x)
            if i == 0:
                ax.set_ylabel(spec.ylabel or spec.y)
            if i < len(spec.titles):
                ax.set_title(spec.titles[i])
        if spec.title:
            fig.suptitle(spec.title)
        fig.tight_layout()
        # pinned PNG text chunk keeps re-renders byte-identical
        fig.savefig(spec.out, metadata={"Software": "figs"})
        plt.close(fig)
    return RenderInfo(out=spec.out, kind=spec.kind,
                      n_panels=len(spec.values) or 1,
                      classes=tuple(spec.classes))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="figs")
    sub = parser.add_subparsers(dest="command", required=True)
    cmd = sub.add_parser("render")
    cmd.add_argument("--spec", required=True,
                     help="JSON file with the FigureSpec fields")
    args = parser.parse_args(argv)
    try:
        info = render(FigureSpec.from_json(args.spec))
    except (SchemaError, OSError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(info.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
