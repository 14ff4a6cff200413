"""Secondary acceptance: figures rendered from real solver CSVs.

The solver is driven through its command-line interface only; these
tests know nothing about its internals beyond the CSV schema.
"""

import shutil
import subprocess

import numpy as np
import pytest

from plotkit import fit_slope, load_columns, plot_contour, plot_convergence

TENMOM = shutil.which("tenmom")

pytestmark = pytest.mark.skipif(TENMOM is None,
                                reason="tenmom CLI not on PATH")


@pytest.fixture(scope="module")
def solver_outputs(tmp_path_factory):
    out = tmp_path_factory.mktemp("solver")
    subprocess.run(
        [TENMOM, "--problem", "accuracy1", "--convergence", "10,20,40",
         "--out", str(out)],
        check=True, capture_output=True)
    subprocess.run(
        [TENMOM, "--problem", "near-vacuum-2d", "--nx", "64", "--ny", "64",
         "--weno", "ao", "--limiter", "adaptive", "--tfinal", "0.02",
         "--out", str(out)],
        check=True, capture_output=True)
    return out


def test_a9_convergence_slope_and_figure(solver_outputs, tmp_path):
    csv = solver_outputs / "accuracy1_convergence.csv"
    cols = load_columns(csv)
    slope = fit_slope(cols["N"], cols["z_l1"])
    fig = plot_convergence(csv, tmp_path / "table1.png")
    ok = abs(abs(slope) - 5.0) <= 0.25 and fig.exists() and fig.stat().st_size > 0
    print("[A9a] %s fitted slope %.2f, figure %s"
          % ("PASS" if ok else "FAIL", slope, fig))
    assert ok


def test_a9_contour_panels(solver_outputs, tmp_path):
    csv = solver_outputs / "near-vacuum-2d_n64.csv"
    fig = plot_contour(csv, tmp_path / "nv2d.png",
                       variables=("rho", "p_trace", "p_det"), levels=20)
    ok = fig.exists() and fig.stat().st_size > 0
    print("[A9b] %s 20-level contour panels at %s" % ("PASS" if ok else "FAIL", fig))
    assert ok
