"""Publication-style figures from the simulator's CSV output."""

__version__ = "0.1.0"

from .csvdata import SchemaError, Table, read_table
from .render import CLASS_COLORS, FigureSpec, Overlay, RenderInfo, render
