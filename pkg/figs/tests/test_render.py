import json
import subprocess
import sys
from pathlib import Path

import pytest

from figs import FigureSpec, SchemaError, read_table, render

SCRIPTS = Path(__file__).resolve().parents[1]


def run_script(name, *args):
    return subprocess.run([sys.executable, str(SCRIPTS / name),
                           *[str(a) for a in args]],
                          capture_output=True, text=True)


FIG_INPUTS = {
    "fig2.py": ["transition.csv"],
    "fig3.py": ["fbar.csv", "lines_coop.csv"],
    "fig4.py": ["pinned.csv", "lines.csv"],
    "fig5.py": ["lines.csv"],
    "fig6.py": ["overlaps.csv"],
    "fig7.py": ["fig7.csv", "fig7_res.csv"],
    "fig8.py": ["tri.csv"],
    "fig9.py": ["four.csv"],
    "fig10.py": ["four.csv"],
    "fig11.py": ["validity.csv"],
}


@pytest.mark.parametrize("script", sorted(FIG_INPUTS))
def test_figure_scripts_render(script, sample_dir, tmp_path):
    out = tmp_path / (script.replace(".py", "") + ".png")
    inputs = [sample_dir / name for name in FIG_INPUTS[script]]
    proc = run_script(script, *inputs, out)
    assert proc.returncode == 0, proc.stderr
    assert out.exists() and out.stat().st_size > 5000


@pytest.mark.parametrize("script,inputs", [
    ("fig2.py", ["transition.csv"]),
    ("fig8.py", ["tri.csv"]),
    ("fig7.py", ["fig7.csv", "fig7_res.csv"]),
])
def test_rerendering_is_pixel_identical(script, inputs, sample_dir,
                                        tmp_path):
    paths = [sample_dir / name for name in inputs]
    out1 = tmp_path / "a.png"
    out2 = tmp_path / "b.png"
    assert run_script(script, *paths, out1).returncode == 0
    assert run_script(script, *paths, out2).returncode == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_classification_has_exactly_four_classes(sample_dir, tmp_path):
    spec = FigureSpec(
        csv=str(sample_dir / "tri.csv"), kind="classification",
        x="delta_c", y="eta", values=["trip_ions"],
        classes=["separable", "biseparable-two-cuts",
                 "biseparable-one-cut", "genuine-tripartite"],
        out=str(tmp_path / "cls.png"))
    info = render(spec)
    assert len(info.classes) == 4

    with pytest.raises(SchemaError):
        render(FigureSpec(
            csv=str(sample_dir / "tri.csv"), kind="classification",
            x="delta_c", y="eta", values=["trip_ions"],
            classes=["a", "b", "c"], out=str(tmp_path / "bad.png")))


def test_missing_columns_reported(sample_dir, tmp_path):
    spec = FigureSpec(csv=str(sample_dir / "lines.csv"), kind="heatmap",
                      x="delta_c", y="eta", values=["f_bar"],
                      out=str(tmp_path / "x.png"))
    with pytest.raises(SchemaError) as err:
        render(spec)
    assert "delta_c" in str(err.value)   # expected
    assert "d0_ratio" in str(err.value)  # found


def test_empty_csv_is_schema_error(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("# param_eta=0\ndelta_c,eta,f_bar\n")
    with pytest.raises(SchemaError):
        read_table(str(empty))


def test_overlay_polylines_from_spec(sample_dir, tmp_path):
    spec = FigureSpec(
        csv=str(sample_dir / "fig7.csv"),
        kind="heatmap",
        x="delta_c",
        y="eta",
        values=["en_cavity_mode2"],
        overlays=[{"csv": str(sample_dir / "fig7_res.csv"),
                   "x": "delta_c", "y": "eta", "scatter": True,
                   "style": {"color": "w"}}],
        out=str(tmp_path / "overlay.png"))
    info = render(spec)
    assert (tmp_path / "overlay.png").stat().st_size > 5000
    assert info.kind == "heatmap"


def test_render_cli(sample_dir, tmp_path):
    spec = {
        "csv": str(sample_dir / "overlaps.csv"),
        "kind": "heatmap",
        "x": "d0_ratio",
        "y": "eta",
        "values": ["overlap_1", "overlap_2", "overlap_3"],
        "out": str(tmp_path / "cli.png"),
    }
    spec_path = tmp_path / "spec.json"
    spec_path.write_text(json.dumps(spec))
    proc = subprocess.run([sys.executable, "-m", "figs.render", "render",
                           "--spec", str(spec_path)],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert (tmp_path / "cli.png").exists()

    bad = dict(spec, values=["does_not_exist"])
    spec_path.write_text(json.dumps(bad))
    proc = subprocess.run([sys.executable, "-m", "figs.render", "render",
                           "--spec", str(spec_path)],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert "does_not_exist" in proc.stderr
