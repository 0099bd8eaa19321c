"""Command-line interface.

Every command resolves its physical parameters in three layers: built-in
defaults (171Yb+ at 369 nm, kappa/2pi = 0.2 MHz, C = 0.5, Gamma = 1e-6
kappa, N = 10), then a flat key=value configuration file (SI units,
mirroring SIParams), then the dimensionless command-line flags (kappa
units).  Outputs are CSV (metadata block of '# key=value' lines, header
row, records; floats at 17 significant digits) or JSON.

Exit status: 0 on success, 1 on configuration errors, 2 when some grid
points failed (their records carry an error status in the output).
"""

from __future__ import annotations

import argparse
import io
import sys
import time

from . import __version__
from . import entanglement as ent
from . import scan as scan_mod
from .dynamics import (LyapunovError, UnstableModelError,
                       balanced_local_reference, build_linear_model,
                       steady_state_covariance, to_local_basis)
from .equilibrium import (Branch, BracketingError, NoEquilibriumError,
                          classify_structure, find_equilibria,
                          transition_boundaries, validity_energy_check)
from .modes import UnstableConfigurationError, normal_modes
from .params import (InvalidParameterError, default_si_params, omega_from_d0,
                     read_config, to_dimensionless)
from .potential import HESSIAN_SOURCES
from .scan import Axis, GridError, ScanGrid, run_scan, write_csv, write_json

SI_CONFIG_KEYS = ("ion_mass", "ion_charge", "wavelength", "kappa",
                  "cooperativity", "delta_c", "eta", "trap_omega",
                  "gamma_motion", "n_thermal")


class CliError(Exception):
    pass


def _add_common(cmd):
    cmd.add_argument("--config", help="key=value configuration file")
    cmd.add_argument("--eta", type=float, help="pump strength eta/kappa")
    cmd.add_argument("--delta-c", type=float, dest="delta_c",
                     help="cavity detuning Delta_c/kappa")
    cmd.add_argument("--d0-ratio", type=float, dest="d0_ratio",
                     help="free interparticle distance d0/x0 (sets omega)")
    cmd.add_argument("--cooperativity", type=float,
                     help="back-action strength C")
    cmd.add_argument("--gamma", type=float,
                     help="motional noise rate Gamma/kappa")
    cmd.add_argument("--n-thermal", type=float, dest="n_thermal",
                     help="motional noise mean excitation")
    cmd.add_argument("--hessian-source", choices=HESSIAN_SOURCES,
                     default=None, dest="hessian_source")
    cmd.add_argument("--grid", action="append", default=[],
                     metavar="AXIS:MIN:MAX:COUNT",
                     help="scan axis (repeat for a second axis); axes: "
                          + ", ".join(scan_mod.AXIS_NAMES))
    cmd.add_argument("--out", help="output path (default: stdout)")
    cmd.add_argument("--format", choices=("csv", "json"), default="csv")
    cmd.add_argument("--threads", type=int, default=1)
    cmd.add_argument("--branch-policy", dest="branch_policy", default=None,
                     choices=scan_mod.BRANCH_POLICIES)
    cmd.add_argument("--exclude-margin", type=float, default=0.0,
                     dest="exclude_margin",
                     help="widen the bistable eta exclusion window")
    cmd.add_argument("--eta-range", dest="eta_range", metavar="LO:HI",
                     help="bracket for the transition bisection")
    cmd.add_argument("--branch", default="auto",
                     choices=("auto", "symmetric", "broken-left",
                              "broken-right"))
    cmd.add_argument("--basis", default="modes", choices=("modes", "ions"))


def _parse_grid_flag(text: str) -> Axis:
    parts = text.split(":")
    if len(parts) != 4:
        raise CliError(f"--grid expects AXIS:MIN:MAX:COUNT, got {text!r}")
    name, lo, hi, count = parts
    try:
        return Axis(name=name, lo=float(lo), hi=float(hi), count=int(count))
    except ValueError as exc:
        raise CliError(f"bad --grid {text!r}: {exc}") from exc


def _resolve(args):
    """Defaults -> config file -> CLI flags; returns (params, settings)."""
    si_kwargs = {}
    settings = {}
    if args.config:
        try:
            raw = read_config(args.config)
        except OSError as exc:
            raise CliError(f"cannot read config: {exc}") from exc
        for key, value in raw.items():
            if key in SI_CONFIG_KEYS:
                si_kwargs[key] = float(value)
            else:
                settings[key] = value
    try:
        p = to_dimensionless(default_si_params(**si_kwargs))
    except InvalidParameterError as exc:
        raise CliError(str(exc)) from exc

    overrides = {}
    if args.cooperativity is not None:
        overrides["c_coop"] = args.cooperativity
    elif "cooperativity" in settings:
        overrides["c_coop"] = float(settings["cooperativity"])
    if args.delta_c is not None:
        overrides["delta_c"] = args.delta_c
    if args.eta is not None:
        overrides["eta"] = args.eta
    if args.gamma is not None:
        overrides["gamma_motion"] = args.gamma
    if args.n_thermal is not None:
        overrides["n_thermal"] = args.n_thermal
    if overrides:
        p = p.with_(**overrides)

    d0_ratio = args.d0_ratio
    if d0_ratio is None and "d0_ratio" in settings:
        d0_ratio = float(settings["d0_ratio"])
    if d0_ratio is not None:
        p = p.with_(omega=omega_from_d0(d0_ratio, p))

    grids = [_parse_grid_flag(text) for text in args.grid]
    if not grids and "grid" in settings:
        grids = [_parse_grid_flag(text)
                 for text in settings["grid"].split()]
    settings["grids"] = grids
    settings["hessian_source"] = (args.hessian_source
                                  or settings.get("hessian_source")
                                  or "effective")
    settings["branch_policy"] = (args.branch_policy
                                 or settings.get("branch_policy")
                                 or "prefer-broken-left")
    if args.eta_range:
        lo, _, hi = args.eta_range.partition(":")
        try:
            settings["eta_range"] = (float(lo), float(hi))
        except ValueError as exc:
            raise CliError(f"bad --eta-range {args.eta_range!r}") from exc
    elif "eta_range" in settings:
        lo, _, hi = str(settings["eta_range"]).partition(":")
        settings["eta_range"] = (float(lo), float(hi))
    return p, settings


def _metadata(p, extra=None):
    md = {"version": __version__,
          "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S")}
    for key, value in sorted(vars(p).items()):
        md[f"param_{key}"] = value
    if extra:
        md.update(extra)
    return md


def _emit(args, fieldnames, rows, metadata, records=None) -> None:
    buf = io.StringIO()
    if args.format == "csv":
        write_csv(buf, fieldnames, rows, metadata)
    else:
        write_json(buf, fieldnames, rows, metadata, records=records)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())


def _pick_equilibrium(p, which: str):
    eqs = find_equilibria(p)
    if which == "auto":
        by = {e.branch: e for e in eqs}
        return (by.get(Branch.BROKEN_LEFT) or by.get(Branch.BROKEN_RIGHT)
                or eqs[0])
    for e in eqs:
        if e.branch.value == which:
            return e
    raise CliError(f"no stable {which} equilibrium at these parameters "
                   f"(found: {[e.branch.value for e in eqs]})")


def _require_grid(settings, counts, command):
    grids = settings["grids"]
    if len(grids) not in counts:
        wanted = " or ".join(str(c) for c in sorted(counts))
        raise CliError(f"{command} needs {wanted} --grid axis/axes")
    return grids


# --- subcommand bodies ------------------------------------------------------

def cmd_equilibrium(args, p, settings):
    rows = []
    for eq in find_equilibria(p):
        row = {"branch": eq.branch.value,
               "xi1": eq.xi[0], "xi2": eq.xi[1], "xi3": eq.xi[2],
               "gap12": eq.xi[1] - eq.xi[0], "gap23": eq.xi[2] - eq.xi[1],
               "f_bar": eq.f_bar, "photon_number": eq.photon_number,
               "delta_bar": eq.delta_bar, "v_tot": eq.v_tot,
               "structure": eq.structure.value if eq.structure else "",
               "hessian_pd": eq.hessian_pd}
        if eq.structure is not None:
            rep = classify_structure(eq, p)
            row["gap_difference_periods"] = rep.gap_difference_periods
            row["matching_metric"] = rep.matching_metric
        else:
            row["gap_difference_periods"] = None
            row["matching_metric"] = None
        rows.append(row)
    names = list(rows[0].keys())
    _emit(args, names, rows, _metadata(p))
    return 0


def cmd_modes(args, p, settings):
    eq = _pick_equilibrium(p, args.branch)
    md = normal_modes(eq, p, hessian_source=settings["hessian_source"])
    rows = []
    for n in range(3):
        rows.append({"mode": n + 1, "omega": md.omega_n[n], "c": md.c_n[n],
                     "overlap": md.overlaps[n], "m1": md.M[0, n],
                     "m2": md.M[1, n], "m3": md.M[2, n]})
    extra = {"branch": eq.branch.value,
             "hessian_source": settings["hessian_source"]}
    _emit(args, list(rows[0].keys()), rows, _metadata(p, extra))
    return 0


def _steady_state(p, settings, which):
    eq = _pick_equilibrium(p, which)
    md = normal_modes(eq, p, hessian_source=settings["hessian_source"])
    model = build_linear_model(eq, md, p)
    state = steady_state_covariance(model)
    return eq, md, state


def cmd_steady_state(args, p, settings):
    eq, md, state = _steady_state(p, settings, args.branch)
    if args.basis == "ions":
        state = to_local_basis(state, md, p)
    labels = [f"{kind}_{name}" for name in state.labels
              for kind in ("x", "p")]
    rows = []
    for i, label in enumerate(labels):
        row = {"quadrature": label}
        row.update({labels[j]: state.sigma[i, j] for j in range(8)})
        rows.append(row)
    nus = ent.symplectic_eigenvalues(state.sigma)
    extra = {"branch": eq.branch.value, "basis": state.basis,
             "hessian_source": settings["hessian_source"]}
    extra.update({f"symplectic_eig_{k + 1}": nus[k] for k in range(4)})
    _emit(args, ["quadrature"] + labels, rows, _metadata(p, extra))
    return 0


def cmd_entangle(args, p, settings):
    eq, md, state = _steady_state(p, settings, args.branch)
    local = to_local_basis(state, md, p)
    witness = to_local_basis(state, md, p,
                             omega_ref=balanced_local_reference(md))
    report = ent.build_report(state, local, witness_state=witness)
    row = {"branch": eq.branch.value}
    row.update(scan_mod._report_scalars(report))
    rec = scan_mod.ScanRecord(index=0, coords={}, report=report)
    _emit(args, list(row.keys()), [row], _metadata(p), records=[rec])
    return 0


def _scan_command(args, p, settings, command):
    grids = _require_grid(settings, {1, 2}, command)
    grid = ScanGrid(axes=tuple(grids), base=p,
                    branch_policy=settings["branch_policy"],
                    hessian_source=settings["hessian_source"])
    result = run_scan(grid, threads=args.threads)
    return grid, result


def cmd_phase_diagram(args, p, settings):
    _, result = _scan_command(args, p, settings, "phase-diagram")
    names, rows = scan_mod.result_rows(result)
    _emit(args, names, rows, result.metadata, records=result.records)
    if args.resonance_out:
        names_r, rows_r = scan_mod.resonance_overlay(result)
        with open(args.resonance_out, "w", encoding="utf-8") as fh:
            write_csv(fh, names_r, rows_r, result.metadata)
    return 2 if any(r.status.startswith("error")
                    for r in result.records) else 0


cmd_tripartite_map = cmd_phase_diagram
cmd_fourpartite_map = cmd_phase_diagram
cmd_overlap_map = cmd_phase_diagram


def cmd_max_ent_map(args, p, settings):
    grid, result = _scan_command(args, p, settings, "max-ent-map")
    if len(grid.axes) != 2 or grid.axes[1].name != "eta":
        raise CliError("max-ent-map needs an eta axis plus one outer axis")
    names, rows = scan_mod.max_entanglement_map(
        result, exclude_margin=args.exclude_margin)
    _emit(args, names, rows, result.metadata)
    return 2 if any(r.status.startswith("error")
                    for r in result.records) else 0


def cmd_transition_lines(args, p, settings):
    grids = _require_grid(settings, {1}, "transition-lines")
    axis = grids[0]
    if axis.name == "eta":
        raise CliError("transition-lines sweeps a non-eta axis")
    eta_range = settings.get("eta_range")
    if eta_range is None:
        raise CliError("transition-lines needs --eta-range LO:HI")
    rows = []
    failed = False
    for value in axis.values:
        pv = scan_mod.apply_axis_value(p, axis.name, float(value))
        row = {axis.name: float(value)}
        try:
            tb = transition_boundaries(pv, eta_range)
            row.update(eta_pin_min=tb.eta_pin_min,
                       eta_sym_max=tb.eta_sym_max, bistable=tb.bistable,
                       status="ok")
        except Exception as exc:
            row.update(eta_pin_min=None, eta_sym_max=None, bistable=None,
                       status=f"error:{type(exc).__name__}")
            failed = True
        rows.append(row)
    extra = {"eta_range_lo": eta_range[0], "eta_range_hi": eta_range[1]}
    _emit(args, list(rows[0].keys()), rows, _metadata(p, extra))
    return 2 if failed else 0


def cmd_validity(args, p, settings):
    which = "auto" if args.branch == "auto" else args.branch
    eq, md, state = _steady_state(p, settings, which)
    rep = validity_energy_check(eq, state, md, p)
    row = {"branch": eq.branch.value, "barrier": rep.barrier,
           "e_vib": rep.e_vib, "valid": rep.valid,
           "degenerate_shift": rep.degenerate_shift}
    for i in range(3):
        row[f"xi{i + 1}"] = eq.xi[i]
        row[f"shifted_xi{i + 1}"] = rep.shifted_xi[i]
    _emit(args, list(row.keys()), [row], _metadata(p))
    return 0


COMMANDS = {
    "equilibrium": cmd_equilibrium,
    "modes": cmd_modes,
    "steady-state": cmd_steady_state,
    "entangle": cmd_entangle,
    "phase-diagram": cmd_phase_diagram,
    "transition-lines": cmd_transition_lines,
    "max-ent-map": cmd_max_ent_map,
    "tripartite-map": cmd_tripartite_map,
    "fourpartite-map": cmd_fourpartite_map,
    "overlap-map": cmd_overlap_map,
    "validity": cmd_validity,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cavitychain",
        description="Steady states and Gaussian entanglement of a "
                    "three-ion chain in a pumped optical cavity.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        cmd = sub.add_parser(name)
        _add_common(cmd)
        if name in ("phase-diagram", "tripartite-map", "fourpartite-map",
                    "overlap-map"):
            cmd.add_argument("--resonance-out", dest="resonance_out",
                             default=None,
                             help="also write the Delta_eff = -omega_j "
                                  "contour points to this CSV")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        p, settings = _resolve(args)
        return COMMANDS[args.command](args, p, settings)
    except (CliError, GridError, InvalidParameterError, NoEquilibriumError,
            BracketingError, UnstableModelError, LyapunovError,
            UnstableConfigurationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
