"""Sample CSVs for the figure tests, produced through the simulator CLI.

The figure package only understands the CSV contract, so the fixtures
shell out to the producer exactly the way a user would.
"""

import subprocess
import sys

import pytest


def cli(*args):
    proc = subprocess.run([sys.executable, "-m", "cavitychain.cli", *args],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    return proc


@pytest.fixture(scope="session")
def sample_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("sample_csv")

    cli("phase-diagram", "--d0-ratio", "49.795", "--branch-policy", "all",
        "--grid", "eta:1:30:12", "--out", str(d / "transition.csv"))

    cli("phase-diagram", "--d0-ratio", "49.98",
        "--grid", "cooperativity:0.2:0.6:3", "--grid", "pump_depth:10:900:6",
        "--out", str(d / "fbar.csv"))

    cli("transition-lines", "--grid", "d0_ratio:47.8:50.2:4",
        "--eta-range", "1:60", "--out", str(d / "lines.csv"))

    cli("transition-lines", "--d0-ratio", "49.98",
        "--grid", "cooperativity:0.3:0.6:2", "--eta-range", "1:120",
        "--out", str(d / "lines_coop.csv"))

    cli("phase-diagram", "--eta", "400",
        "--grid", "d0_ratio:47.8:50.2:7", "--out", str(d / "pinned.csv"))

    cli("overlap-map", "--grid", "d0_ratio:48:49:4", "--grid", "eta:5:60:6",
        "--out", str(d / "overlaps.csv"))

    cli("phase-diagram", "--d0-ratio", "51.44", "--threads", "2",
        "--grid", "delta_c:-6:-1:5", "--grid", "eta:2:120:6",
        "--out", str(d / "fig7.csv"),
        "--resonance-out", str(d / "fig7_res.csv"))

    cli("tripartite-map", "--d0-ratio", "48.99", "--threads", "2",
        "--grid", "delta_c:-6:-1:6", "--grid", "eta:5:120:8",
        "--out", str(d / "tri.csv"))

    cli("fourpartite-map", "--d0-ratio", "48.28", "--threads", "2",
        "--grid", "delta_c:-7:-1:6", "--grid", "eta:5:150:8",
        "--out", str(d / "four.csv"))

    cli("validity", "--d0-ratio", "49.795", "--eta", "100",
        "--out", str(d / "validity.csv"))

    return d
