"""CSV loading shared by the plotting scripts.

The scripts only know the solver's CSV schema: one header row of column
names, comma-separated full-precision floats below.  They never import
the solver.
"""

from __future__ import annotations

import numpy as np


def load_columns(path):
    """Read a solver CSV into an ordered {name: 1-D array} dict."""
    with open(path) as f:
        names = [c.strip() for c in f.readline().strip().split(",")]
        data = np.loadtxt(f, delimiter=",", ndmin=2)
    if data.shape[1] != len(names):
        raise ValueError("%s: %d header names but %d columns"
                         % (path, len(names), data.shape[1]))
    return {name: data[:, k] for k, name in enumerate(names)}


def require(cols, names, path):
    missing = [n for n in names if n not in cols]
    if missing:
        raise ValueError("%s is missing columns: %s" % (path, ", ".join(missing)))


def to_grid(cols):
    """Reshape flattened (x, y, fields...) columns onto the 2-D grid."""
    x = np.unique(cols["x"])
    y = np.unique(cols["y"])
    nx, ny = len(x), len(y)
    if nx * ny != len(cols["x"]):
        raise ValueError("field columns do not form a full tensor grid")
    # solver CSVs store x-major rows
    fields = {}
    for name, col in cols.items():
        if name not in ("x", "y"):
            fields[name] = col.reshape(nx, ny)
    return x, y, fields
