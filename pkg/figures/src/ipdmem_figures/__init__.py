"""Figure rendering for ipdmem sweep CSVs."""

from .curves import FigureSpec, plot_phi_curves, render
from .heatmaps import plot_heatmaps
from .schema import SchemaError

__version__ = "0.1.0"
