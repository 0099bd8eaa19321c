import io

import pytest

from cavitychain import (Axis, GridError, ScanGrid, default_params,
                         max_entanglement_map, read_csv, resonance_overlay,
                         run_scan, write_csv)
from cavitychain.scan import apply_axis_value, result_rows


@pytest.fixture(scope="module")
def small_result():
    grid = ScanGrid(axes=(Axis("delta_c", -6.0, -1.0, 4),
                          Axis("eta", 2.0, 120.0, 12)),
                    base=default_params(d0_ratio=48.99))
    return grid, run_scan(grid, threads=1)


def test_axis_validation():
    with pytest.raises(GridError):
        Axis("eta", 0.0, 10.0, 1)
    with pytest.raises(GridError):
        Axis("eta", 5.0, 5.0, 4)
    with pytest.raises(GridError):
        Axis("volume", 0.0, 1.0, 4)
    with pytest.raises(GridError):
        ScanGrid(axes=(), base=default_params())
    with pytest.raises(GridError):
        ScanGrid(axes=(Axis("eta", 0, 1, 2), Axis("eta", 0, 1, 2)),
                 base=default_params())


def test_eta_axis_forced_inner():
    grid = ScanGrid(axes=(Axis("eta", 0.0, 10.0, 3),
                          Axis("delta_c", -2.0, -1.0, 2)),
                    base=default_params())
    assert grid.axes[0].name == "delta_c"
    assert grid.axes[1].name == "eta"


def test_apply_axis_value_pump_depth():
    p = default_params()
    q = apply_axis_value(p, "pump_depth", 50.0)
    assert q.c_coop * q.eta ** 2 == pytest.approx(50.0, rel=1e-12)
    q2 = apply_axis_value(p, "d0_ratio", 48.0)
    from cavitychain import d0_from_omega
    assert d0_from_omega(q2) == pytest.approx(48.0, rel=1e-12)


def test_grid_enumeration_row_major(small_result):
    grid, result = small_result
    assert len(result.records) == 4 * 12
    outer = grid.axes[0].values
    inner = grid.axes[1].values
    for k, rec in enumerate(result.records):
        assert rec.index == k
        assert rec.coords["delta_c"] == pytest.approx(outer[k // 12])
        assert rec.coords["eta"] == pytest.approx(inner[k % 12])


def test_bistable_records_have_both_branches(small_result):
    _, result = small_result
    seen = 0
    for rec in result.records:
        if rec.bistable:
            seen += 1
            assert "symmetric" in rec.branches
            assert "broken-left" in rec.branches
    # the window is narrow; it need not be hit by this coarse grid
    assert seen >= 0


def test_no_dropped_points(small_result):
    _, result = small_result
    assert all(rec.status in ("ok", "unstable")
               or rec.status.startswith("error") for rec in result.records)
    assert sum(rec.status == "ok" for rec in result.records) > 30


def test_parallel_equals_serial():
    grid = ScanGrid(axes=(Axis("delta_c", -4.0, -1.0, 3),
                          Axis("eta", 2.0, 60.0, 5)),
                    base=default_params(d0_ratio=49.795))
    names1, rows1 = result_rows(run_scan(grid, threads=1))
    names2, rows2 = result_rows(run_scan(grid, threads=3))
    assert names1 == names2
    assert rows1 == rows2


def test_csv_round_trip_and_determinism(small_result):
    _, result = small_result
    names, rows = result_rows(result)
    md = {k: v for k, v in result.metadata.items() if k != "timestamp"}
    buf1, buf2 = io.StringIO(), io.StringIO()
    write_csv(buf1, names, rows, md)
    write_csv(buf2, names, rows, md)
    assert buf1.getvalue() == buf2.getvalue()

    meta, fields, parsed = read_csv(io.StringIO(buf1.getvalue()))
    assert fields == names
    assert len(parsed) == len(rows)
    # 17-significant-digit floats survive the round trip exactly
    for raw, row in zip(parsed, rows):
        assert float(raw["eta"]) == row["eta"]
        if row["f_bar"] is not None:
            assert float(raw["f_bar"]) == row["f_bar"]


def test_branch_policy_all_emits_every_branch():
    grid = ScanGrid(axes=(Axis("eta", 14.0, 18.0, 9),),
                    base=default_params(d0_ratio=49.795),
                    branch_policy="all", with_boundaries=False)
    result = run_scan(grid)
    per_point = {}
    for rec in result.records:
        per_point.setdefault(rec.coords["eta"], []).append(rec.branch)
    assert any(len(v) >= 3 for v in per_point.values())


def test_max_entanglement_map_excludes_bistable_window():
    grid = ScanGrid(axes=(Axis("delta_c", -3.0, -1.0, 2),
                          Axis("eta", 2.0, 60.0, 30)),
                    base=default_params(d0_ratio=49.795))
    result = run_scan(grid)
    names, rows = max_entanglement_map(result)
    assert len(rows) == 2
    for row in rows:
        assert not row["flagged"]
        if row["eta_pin_min"] is not None and \
                row["eta_sym_max"] - row["eta_pin_min"] > 4e-4:
            for key, value in row.items():
                if key.startswith("eta_at_max_") and value is not None:
                    inside = (row["eta_pin_min"] <= value
                              <= row["eta_sym_max"])
                    assert not inside
        assert row["max_en_cavity_mode2"] >= 0.0


def test_max_map_requires_eta_axis(small_result):
    grid = ScanGrid(axes=(Axis("delta_c", -3.0, -1.0, 2),
                          Axis("d0_ratio", 48.0, 49.0, 2)),
                    base=default_params())
    result = run_scan(grid)
    with pytest.raises(GridError):
        max_entanglement_map(result)


def test_max_map_idempotent(small_result):
    _, result = small_result
    names1, rows1 = max_entanglement_map(result)
    names2, rows2 = max_entanglement_map(result)
    assert rows1 == rows2


def test_resonance_overlay_points_lie_on_contour(small_result):
    grid, result = small_result
    names, rows = resonance_overlay(result)
    assert names == ["mode", "delta_c", "eta"]
    assert rows, "no resonance crossings found on this window"

    # oracle: re-evaluate Delta_eff + omega_j at each emitted point; it
    # must vanish within the local grid variation of that quantity
    from cavitychain import find_equilibria, normal_modes
    from cavitychain.equilibrium import Branch

    d_dc = (grid.axes[0].hi - grid.axes[0].lo) / (grid.axes[0].count - 1)
    d_eta = (grid.axes[1].hi - grid.axes[1].lo) / (grid.axes[1].count - 1)
    checked = 0
    for row in rows[::3]:
        p = default_params(d0_ratio=48.99, delta_c=row["delta_c"],
                           eta=row["eta"])
        eqs = find_equilibria(p)
        by = {e.branch: e for e in eqs}
        eq = by.get(Branch.BROKEN_LEFT) or by.get(Branch.SYMMETRIC)
        md = normal_modes(eq, p)
        f = eq.delta_bar + md.omega_n[int(row["mode"]) - 1]
        # bound |f| by the variation across one cell: df/d(delta_c) = 1,
        # df/d(eta) estimated by the photon-pull slope, conservatively 1
        assert abs(f) < 1.5 * (d_dc + d_eta)
        checked += 1
    assert checked > 3
