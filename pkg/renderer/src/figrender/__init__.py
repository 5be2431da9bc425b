"""Figure rendering for kicked-top decoherence run records.

Consumes the CSV record files written by the simulation package and draws
the standard figures: purity and entanglement versus step for a decoherence
run, and the decoherence function with its fitted curves.  This package
reads files only; it never imports the simulation code and computes nothing
physical.
"""

from .figures import CurveStyle, FigureSpec, FIGURE_NAMES, build_figure, render
from .records import RecordTable, RecordsError, load_records

__version__ = "0.1.0"

__all__ = [
    "CurveStyle",
    "FigureSpec",
    "FIGURE_NAMES",
    "RecordTable",
    "RecordsError",
    "build_figure",
    "load_records",
    "render",
    "__version__",
]
