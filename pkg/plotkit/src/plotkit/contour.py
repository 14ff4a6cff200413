"""2-D contour panels (20 contour lines, matching the reference figures)."""

from __future__ import annotations

import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .io import load_columns, require, to_grid


def plot_contour(csv_path, out_path, variables=("rho",), levels=20):
    """Contour panels of the requested field variables."""
    cols = load_columns(csv_path)
    require(cols, ("x", "y") + tuple(variables), csv_path)
    x, y, fields = to_grid(cols)
    fig, axes = plt.subplots(1, len(variables),
                             figsize=(4.6 * len(variables), 4.0),
                             squeeze=False)
    for ax, var in zip(axes[0], variables):
        cs = ax.contour(x, y, fields[var].T, levels=levels, linewidths=0.7)
        ax.set_xlabel("x")
        ax.set_ylabel("y")
        ax.set_title(var)
        ax.set_aspect("equal")
        fig.colorbar(cs, ax=ax, shrink=0.85)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return out_path


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv", help="2-D field CSV with x,y columns")
    ap.add_argument("-o", "--out", default="contour.png")
    ap.add_argument("--variables", default="rho")
    ap.add_argument("--levels", type=int, default=20)
    args = ap.parse_args(argv)
    out = plot_contour(args.csv, args.out, tuple(args.variables.split(",")),
                       args.levels)
    print("wrote %s" % out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
