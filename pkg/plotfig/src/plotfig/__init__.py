"""Figure generation for ris-a2g sweep summaries."""

from .cli import PlotSpec, SchemaError, render_sweep

__version__ = "0.1.0"
