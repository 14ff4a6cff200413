"""Log-log convergence figures with least-squares slopes in the legend."""

from __future__ import annotations

import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .io import load_columns, require

MARKERS = "os^vDph"


def fit_slope(n, err):
    """Least-squares slope of log(err) against log(N)."""
    n = np.asarray(n, dtype=float)
    err = np.asarray(err, dtype=float)
    keep = err > 0
    if keep.sum() < 2:
        return None
    A = np.vstack([np.log(n[keep]), np.ones(keep.sum())]).T
    slope, _ = np.linalg.lstsq(A, np.log(err[keep]), rcond=None)[0]
    return float(slope)


def plot_convergence(csv_path, out_path, norms=("l1", "linf")):
    """One panel per norm; every <variant>_<norm> column becomes a curve."""
    cols = load_columns(csv_path)
    require(cols, ["N"], csv_path)
    n = cols["N"]
    series = {}
    for name in cols:
        if name == "N" or name.endswith("_order"):
            continue
        variant, _, norm = name.rpartition("_")
        series.setdefault(norm, []).append((variant, cols[name]))
    norms = [nm for nm in norms if nm in series]
    if not norms:
        raise ValueError("%s has no error columns for %s" % (csv_path, norms))

    fig, axes = plt.subplots(1, len(norms), figsize=(5.2 * len(norms), 4.0))
    axes = np.atleast_1d(axes)
    for ax, norm in zip(axes, norms):
        for k, (variant, err) in enumerate(sorted(series[norm])):
            slope = fit_slope(n, err)
            label = variant.upper()
            if slope is not None:
                label += " (slope %.2f)" % slope
            ax.loglog(n, err, MARKERS[k % len(MARKERS)] + "-", label=label,
                      markerfacecolor="none")
        ax.set_xlabel("N")
        ax.set_ylabel("%s error" % norm.replace("linf", "L-inf").replace(
            "l1", "L1").replace("l2", "L2"))
        ax.grid(True, which="both", alpha=0.3)
        ax.legend()
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return out_path


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv", help="convergence table from 'tenmom --convergence'")
    ap.add_argument("-o", "--out", default="convergence.png")
    ap.add_argument("--norms", default="l1,linf",
                    help="comma-separated norms to plot")
    args = ap.parse_args(argv)
    out = plot_convergence(args.csv, args.out,
                           tuple(args.norms.split(",")))
    print("wrote %s" % out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
