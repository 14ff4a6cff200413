"""1-D profile overlays against a reference run, with optional zoom row."""

from __future__ import annotations

import argparse
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .io import load_columns, require


def plot_profile(csv_paths, out_path, variables=("rho", "v1", "v2"),
                 reference=None, zoom=None):
    """Overlay the listed runs (markers) over the reference (line).

    zoom, when given as (x0, x1), adds a second panel row restricted to
    that window; an empty window falls back to the full domain.
    """
    runs = []
    for p in csv_paths:
        cols = load_columns(p)
        require(cols, ("x",) + tuple(variables), p)
        runs.append((Path(p).stem, cols))
    ref = None
    if reference is not None:
        ref = load_columns(reference)
        require(ref, ("x",) + tuple(variables), reference)

    nrows = 2 if zoom else 1
    fig, axes = plt.subplots(nrows, len(variables),
                             figsize=(4.2 * len(variables), 3.4 * nrows),
                             squeeze=False)
    for col, var in enumerate(variables):
        for row in range(nrows):
            ax = axes[row][col]
            if ref is not None:
                ax.plot(ref["x"], ref[var], "k-", lw=1.0, label="reference")
            for name, cols in runs:
                ax.plot(cols["x"], cols[var], "o", ms=2.5,
                        markerfacecolor="none", label=name)
            ax.set_xlabel("x")
            ax.set_ylabel(var)
            if row == 1:
                ax.set_xlim(zoom)
                lo, hi = zoom
                for name, cols in runs:
                    sel = (cols["x"] >= lo) & (cols["x"] <= hi)
                    if sel.any():
                        vals = cols[var][sel]
                        pad = 0.1 * (vals.max() - vals.min() + 1e-30)
                        ax.set_ylim(vals.min() - pad, vals.max() + pad)
            if row == 0 and col == 0:
                ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return out_path


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv", nargs="+", help="1-D field or cut CSVs")
    ap.add_argument("-o", "--out", default="profile.png")
    ap.add_argument("--variables", default="rho,v1,v2")
    ap.add_argument("--reference", help="high-resolution reference CSV")
    ap.add_argument("--zoom", help="window 'x0,x1' for a zoom panel row")
    args = ap.parse_args(argv)
    zoom = None
    if args.zoom:
        parts = [float(s) for s in args.zoom.split(",") if s.strip()]
        zoom = tuple(parts) if len(parts) == 2 else None
    out = plot_profile(args.csv, args.out,
                       tuple(args.variables.split(",")),
                       args.reference, zoom)
    print("wrote %s" % out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
