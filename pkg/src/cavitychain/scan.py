"""Parameter sweeps over the system's phase space.

A scan grid holds one or two axes over (eta, delta_c, d0_ratio,
cooperativity, pump_depth); when an eta axis is present it is always the
inner one, so that within a column (fixed outer value) the equilibria of
the previous pump strength seed the next search (branch continuation).
Per-point failures are recorded in a status field, never dropped, and the
classically bistable eta window of each column is located once and
attached to its records.  Columns are independent, so they can be
distributed over worker processes; results are reassembled in grid order,
making parallel and serial runs identical.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__
from . import entanglement as ent
from .dynamics import (balanced_local_reference, build_linear_model,
                       steady_state_covariance, to_local_basis)
from .equilibrium import (Branch, BracketingError, find_equilibria,
                          transition_boundaries)
from .modes import normal_modes
from .params import DimensionlessParams, omega_from_d0

AXIS_NAMES = ("eta", "delta_c", "d0_ratio", "cooperativity", "pump_depth")

BRANCH_POLICIES = ("prefer-broken-left", "all")


class GridError(ValueError):
    """Invalid scan-grid configuration."""


@dataclass(frozen=True)
class Axis:
    name: str
    lo: float
    hi: float
    count: int

    def __post_init__(self):
        if self.name not in AXIS_NAMES:
            raise GridError(f"unknown axis {self.name!r}; "
                            f"expected one of {AXIS_NAMES}")
        if self.count < 2:
            raise GridError(f"axis {self.name}: count must be >= 2")
        if not (np.isfinite(self.lo) and np.isfinite(self.hi)
                and self.lo < self.hi):
            raise GridError(f"axis {self.name}: bad range "
                            f"({self.lo}, {self.hi})")

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.count)


@dataclass(frozen=True)
class ScanGrid:
    axes: tuple
    base: DimensionlessParams
    branch_policy: str = "prefer-broken-left"
    hessian_source: str = "effective"
    g_list: tuple = ()
    compute_entanglement: bool = True
    with_boundaries: bool = True

    def __post_init__(self):
        axes = tuple(self.axes)
        if not 1 <= len(axes) <= 2:
            raise GridError("a scan takes one or two axes")
        names = [a.name for a in axes]
        if len(set(names)) != len(names):
            raise GridError(f"duplicate axes {names}")
        if len(axes) == 2 and names[0] == "eta":
            axes = (axes[1], axes[0])  # eta sweeps innermost
        object.__setattr__(self, "axes", axes)
        if self.branch_policy not in BRANCH_POLICIES:
            raise GridError(f"unknown branch policy {self.branch_policy!r}")
        if not self.g_list:
            object.__setattr__(
                self, "g_list",
                tuple(float(g) for g in ent.default_g_list()))


def apply_axis_value(p: DimensionlessParams, name: str, value: float,
                     ) -> DimensionlessParams:
    """Set one swept quantity on a parameter record."""
    if name == "eta":
        return p.with_(eta=float(value))
    if name == "delta_c":
        return p.with_(delta_c=float(value))
    if name == "d0_ratio":
        return p.with_(omega=omega_from_d0(float(value), p))
    if name == "cooperativity":
        return p.with_(c_coop=float(value))
    if name == "pump_depth":
        # pump_depth = C * (eta/kappa)^2, the optical-depth combination
        return p.with_(eta=float(np.sqrt(value / p.c_coop)))
    raise GridError(f"unknown axis {name!r}")


@dataclass
class ScanRecord:
    """One grid point (or one branch of it under the 'all' policy)."""

    index: int
    coords: dict
    status: str = "ok"
    branch: str = ""
    branches: str = ""
    structure: str = ""
    bistable: bool | None = None
    eta_pin_min: float | None = None
    eta_sym_max: float | None = None
    stable: bool | None = None
    xi: np.ndarray | None = None
    f_bar: float | None = None
    photon_number: float | None = None
    delta_bar: float | None = None
    v_tot: float | None = None
    omega_n: np.ndarray | None = None
    c_n: np.ndarray | None = None
    overlaps: np.ndarray | None = None
    sigma: np.ndarray | None = None
    report: ent.EntanglementReport | None = None


@dataclass(frozen=True)
class ScanResult:
    grid: ScanGrid
    records: list
    metadata: dict


def _select_branches(eqs, policy):
    by = {e.branch: e for e in eqs}
    if policy == "all":
        return list(eqs)
    pinned = by.get(Branch.BROKEN_LEFT) or by.get(Branch.BROKEN_RIGHT)
    chosen = pinned or by.get(Branch.SYMMETRIC) or eqs[0]
    return [chosen]


def _evaluate_point(grid: ScanGrid, p: DimensionlessParams, index: int,
                    coords: dict, extra_seeds):
    """Full pipeline at one parameter point; returns (records, seeds)."""
    base = ScanRecord(index=index, coords=dict(coords))
    try:
        eqs = find_equilibria(p, extra_seeds=extra_seeds)
    except Exception as exc:  # recorded, not raised: failures are data
        base.status = f"error:{type(exc).__name__}"
        return [base], None
    seeds = [e.xi for e in eqs]
    branches = "+".join(e.branch.value for e in eqs)

    records = []
    for eq in _select_branches(eqs, grid.branch_policy):
        rec = ScanRecord(index=index, coords=dict(coords))
        rec.branch = eq.branch.value
        rec.branches = branches
        rec.structure = eq.structure.value if eq.structure else ""
        rec.xi = eq.xi
        rec.f_bar = eq.f_bar
        rec.photon_number = eq.photon_number
        rec.delta_bar = eq.delta_bar
        rec.v_tot = eq.v_tot
        try:
            md = normal_modes(eq, p, hessian_source=grid.hessian_source)
            rec.omega_n = md.omega_n
            rec.c_n = md.c_n
            rec.overlaps = md.overlaps
            model = build_linear_model(eq, md, p)
            rec.stable = model.stable
            if not model.stable:
                rec.status = "unstable"
            else:
                state = steady_state_covariance(model)
                rec.sigma = state.sigma
                if grid.compute_entanglement:
                    local = to_local_basis(state, md, p)
                    witness = to_local_basis(
                        state, md, p,
                        omega_ref=balanced_local_reference(md))
                    rec.report = ent.build_report(
                        state, local, g_list=grid.g_list,
                        witness_state=witness)
        except Exception as exc:
            rec.status = f"error:{type(exc).__name__}"
        records.append(rec)
    return records, seeds


def _column_spec(grid: ScanGrid):
    """Split the grid into (outer values, inner axis)."""
    if len(grid.axes) == 2:
        return grid.axes[0].values, grid.axes[1]
    axis = grid.axes[0]
    if axis.name == "eta":
        return np.array([None]), axis   # one column, eta swept inside
    return axis.values, None            # independent single-point columns


def run_column(grid: ScanGrid, column_index: int):
    """All records of one column, in inner-axis order."""
    outer_values, inner = _column_spec(grid)
    outer_value = outer_values[column_index]
    p_col = grid.base
    outer_name = None
    if outer_value is not None:
        outer_name = grid.axes[0].name
        p_col = apply_axis_value(p_col, outer_name, outer_value)

    inner_count = inner.count if inner is not None else 1
    boundaries = None
    if inner is not None and inner.name == "eta" and grid.with_boundaries:
        try:
            boundaries = transition_boundaries(p_col, (inner.lo, inner.hi))
        except BracketingError:
            boundaries = None

    records = []
    seeds = None
    for j in range(inner_count):
        coords = {}
        p_pt = p_col
        if outer_value is not None:
            coords[outer_name] = float(outer_value)
        if inner is not None:
            inner_value = float(inner.values[j])
            coords[inner.name] = inner_value
            p_pt = apply_axis_value(p_col, inner.name, inner_value)
        index = column_index * inner_count + j
        point_records, new_seeds = _evaluate_point(
            grid, p_pt, index, coords, seeds)
        if inner is not None and inner.name == "eta":
            seeds = new_seeds  # branch continuation along the pump sweep
        for rec in point_records:
            if boundaries is not None:
                rec.eta_pin_min = boundaries.eta_pin_min
                rec.eta_sym_max = boundaries.eta_sym_max
                eta = rec.coords.get("eta")
                rec.bistable = bool(
                    boundaries.bistable and eta is not None
                    and boundaries.eta_pin_min <= eta
                    <= boundaries.eta_sym_max)
            records.append(rec)
    return records


def run_scan(grid: ScanGrid, threads: int = 1) -> ScanResult:
    """Execute a scan; records come back in row-major grid order.

    Parameters
    ----------
    grid : ScanGrid
    threads : int
        Worker processes for the outer axis; 1 runs serially.  Parallel
        and serial execution produce identical results.
    """
    outer_values, _ = _column_spec(grid)
    n_col = len(outer_values)
    if threads > 1 and n_col > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            columns = list(pool.map(run_column, [grid] * n_col,
                                    range(n_col)))
    else:
        columns = [run_column(grid, i) for i in range(n_col)]
    records = [rec for column in columns for rec in column]

    metadata = {"version": __version__,
                "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S"),
                "branch_policy": grid.branch_policy,
                "hessian_source": grid.hessian_source,
                "n_records": len(records)}
    for i, axis in enumerate(grid.axes):
        metadata[f"axis{i}"] = (f"{axis.name}:{axis.lo:.17g}:"
                                f"{axis.hi:.17g}:{axis.count}")
    for key, value in sorted(vars(grid.base).items()):
        metadata[f"param_{key}"] = value
    return ScanResult(grid=grid, records=records, metadata=metadata)


# ---------------------------------------------------------------------------
# post-processing

PAIR_KEYS_MODES = ["cavity|mode1", "cavity|mode2", "cavity|mode3",
                   "mode1|mode2", "mode1|mode3", "mode2|mode3"]
PAIR_KEYS_IONS = ["cavity|ion1", "cavity|ion2", "cavity|ion3",
                  "ion1|ion2", "ion1|ion3", "ion2|ion3"]

ENT_COLUMNS = (
    [f"en_{k.replace('|', '_')}" for k in PAIR_KEYS_MODES]
    + ["en_cavity_rest", "en_mode1_rest", "en_mode2_rest", "en_mode3_rest"]
    + [f"en_{k.replace('|', '_')}" for k in PAIR_KEYS_IONS]
    + ["en_ion1_rest", "en_ion2_rest", "en_ion3_rest"]
    + [f"mi_{k.replace('|', '_')}" for k in
       ("mode1|mode2", "mode1|mode3", "mode2|mode3")]
)


def _report_scalars(report: ent.EntanglementReport | None) -> dict:
    out = dict.fromkeys(ENT_COLUMNS + ["trip_ions", "trip_modes",
                                       "vl_ii_iv", "fourpartite"])
    if report is None:
        return out
    for key in PAIR_KEYS_MODES:
        out[f"en_{key.replace('|', '_')}"] = report.pair_neg_modes[key]
    for key in PAIR_KEYS_IONS:
        out[f"en_{key.replace('|', '_')}"] = report.pair_neg_ions[key]
    out["en_cavity_rest"] = report.one_vs_rest_modes["cavity"]
    for n in (1, 2, 3):
        out[f"en_mode{n}_rest"] = report.one_vs_rest_modes[f"mode{n}"]
        out[f"en_ion{n}_rest"] = report.one_vs_rest_ions[f"ion{n}"]
    for key in ("mode1|mode2", "mode1|mode3", "mode2|mode3"):
        out[f"mi_{key.replace('|', '_')}"] = report.mutual_info_modes[key]
    out["trip_ions"] = report.tripartite_ions["cavity"].value
    out["trip_modes"] = report.tripartite_modes["cavity"].value
    out["vl_ii_iv"] = report.ii_and_iv_violated
    out["fourpartite"] = report.fourpartite.value
    return out


def record_to_row(rec: ScanRecord) -> dict:
    row = dict(rec.coords)
    row.update(status=rec.status, branch=rec.branch, branches=rec.branches,
               structure=rec.structure, bistable=rec.bistable,
               eta_pin_min=rec.eta_pin_min, eta_sym_max=rec.eta_sym_max,
               stable=rec.stable, f_bar=rec.f_bar,
               photon_number=rec.photon_number, delta_bar=rec.delta_bar,
               v_tot=rec.v_tot)
    for i in range(3):
        row[f"xi{i + 1}"] = None if rec.xi is None else rec.xi[i]
        row[f"omega_{i + 1}"] = (None if rec.omega_n is None
                                 else rec.omega_n[i])
        row[f"c_{i + 1}"] = None if rec.c_n is None else rec.c_n[i]
        row[f"overlap_{i + 1}"] = (None if rec.overlaps is None
                                   else rec.overlaps[i])
    row.update(_report_scalars(rec.report))
    return row


def result_rows(result: ScanResult):
    rows = [record_to_row(rec) for rec in result.records]
    names = list(rows[0].keys()) if rows else []
    return names, rows


def max_entanglement_map(result: ScanResult, exclude_margin: float = 0.0,
                         ) -> tuple[list, list]:
    """Per outer value, the maximum of each negativity over admissible eta.

    Admissible points have a complete pipeline and, when the column is
    classically bistable, an eta outside the closed coexistence window
    (optionally widened by ``exclude_margin`` on both sides).  Columns
    with no admissible point are flagged.
    """
    grid = result.grid
    if len(grid.axes) != 2 or grid.axes[1].name != "eta":
        raise GridError("the maximum-over-eta map needs a 2-axis grid with "
                        "an eta axis")
    if grid.branch_policy != "prefer-broken-left":
        raise GridError("the maximum-over-eta map expects one record per "
                        "grid point (branch policy prefer-broken-left)")
    outer_name = grid.axes[0].name
    inner_count = grid.axes[1].count
    en_keys = [k for k in ENT_COLUMNS if k.startswith("en_")]

    rows = []
    for i, outer_value in enumerate(grid.axes[0].values):
        column = result.records[i * inner_count:(i + 1) * inner_count]
        admissible = []
        for rec in column:
            if rec.status != "ok" or rec.report is None:
                continue
            if rec.eta_pin_min is not None:
                bistable_window = (rec.eta_sym_max - rec.eta_pin_min
                                   > 4e-4)
                if bistable_window or exclude_margin > 0.0:
                    lo = rec.eta_pin_min - exclude_margin
                    hi = rec.eta_sym_max + exclude_margin
                    if lo <= rec.coords["eta"] <= hi:
                        continue
            admissible.append(rec)
        row = {outer_name: float(outer_value),
               "flagged": not admissible,
               "eta_pin_min": column[0].eta_pin_min,
               "eta_sym_max": column[0].eta_sym_max}
        for key in en_keys:
            best, best_eta = None, None
            for rec in admissible:
                value = _report_scalars(rec.report)[key]
                if best is None or value > best:
                    best, best_eta = value, rec.coords["eta"]
            row[f"max_{key}"] = best
            row[f"eta_at_max_{key}"] = best_eta
        rows.append(row)
    names = list(rows[0].keys()) if rows else []
    return names, rows


def resonance_overlay(result: ScanResult) -> tuple[list, list]:
    """Zero contours of Delta_eff + omega_j over a two-axis grid.

    Sign changes of delta_bar + omega_j between neighboring grid points
    are located by linear interpolation along both grid directions and
    exported as loose contour points, one row per crossing.
    """
    grid = result.grid
    if len(grid.axes) != 2:
        raise GridError("the resonance overlay needs a 2-axis grid")
    if grid.branch_policy != "prefer-broken-left":
        raise GridError("resonance overlay expects one record per point")
    x_name, y_name = grid.axes[0].name, grid.axes[1].name
    nx, ny = grid.axes[0].count, grid.axes[1].count
    xv, yv = grid.axes[0].values, grid.axes[1].values

    value = np.full((3, nx, ny), np.nan)
    for rec in result.records:
        if rec.delta_bar is None or rec.omega_n is None:
            continue
        i, j = divmod(rec.index, ny)
        for m in range(3):
            value[m, i, j] = rec.delta_bar + rec.omega_n[m]

    rows = []
    for m in range(3):
        f = value[m]
        for i in range(nx):
            for j in range(ny):
                if not np.isfinite(f[i, j]):
                    continue
                # crossing toward +x neighbor
                if i + 1 < nx and np.isfinite(f[i + 1, j]) \
                        and f[i, j] * f[i + 1, j] < 0.0:
                    t = f[i, j] / (f[i, j] - f[i + 1, j])
                    rows.append({"mode": m + 1,
                                 x_name: float(xv[i] + t * (xv[i + 1] - xv[i])),
                                 y_name: float(yv[j])})
                # crossing toward +y neighbor
                if j + 1 < ny and np.isfinite(f[i, j + 1]) \
                        and f[i, j] * f[i, j + 1] < 0.0:
                    t = f[i, j] / (f[i, j] - f[i, j + 1])
                    rows.append({"mode": m + 1,
                                 x_name: float(xv[i]),
                                 y_name: float(yv[j] + t * (yv[j + 1] - yv[j]))})
    return ["mode", x_name, y_name], rows


# ---------------------------------------------------------------------------
# output formats

def _format_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def write_csv(fh, fieldnames, rows, metadata):
    """Metadata block of '# key=value' lines, a header row, then records.

    Floating-point values carry 17 significant digits so that re-parsing
    reproduces them exactly.
    """
    for key in sorted(metadata):
        fh.write(f"# {key}={_format_value(metadata[key])}\n")
    fh.write(",".join(fieldnames) + "\n")
    for row in rows:
        fh.write(",".join(_format_value(row.get(name))
                          for name in fieldnames) + "\n")


def read_csv(fh):
    """Inverse of :func:`write_csv`; returns (metadata, fieldnames, rows)."""
    metadata, fieldnames, rows = {}, None, []
    for line in fh:
        line = line.rstrip("\n")
        if not line:
            continue
        if line.startswith("# "):
            key, _, value = line[2:].partition("=")
            metadata[key] = value
            continue
        if fieldnames is None:
            fieldnames = line.split(",")
            continue
        rows.append(dict(zip(fieldnames, line.split(","))))
    return metadata, fieldnames or [], rows


def _json_default(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, ent.EntanglementReport):
        d = dict(vars(obj))
        for key in ("tripartite_modes", "tripartite_ions"):
            d[key] = {k: v.value for k, v in d[key].items()}
        d["fourpartite"] = d["fourpartite"].value
        return d
    if hasattr(obj, "value"):
        return obj.value
    raise TypeError(f"cannot serialize {type(obj)!r}")


def write_json(fh, fieldnames, rows, metadata, records=None):
    payload = {"metadata": metadata, "columns": fieldnames, "rows": rows}
    if records is not None:
        payload["reports"] = [rec.report for rec in records]
    json.dump(payload, fh, default=_json_default, indent=1)
    fh.write("\n")
