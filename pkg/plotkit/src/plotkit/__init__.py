"""Figure scripts for tenmom CSV outputs (convergence, profiles, contours)."""

from .contour import plot_contour
from .convergence import fit_slope, plot_convergence
from .io import load_columns, to_grid
from .profile import plot_profile

__version__ = "0.1.0"
