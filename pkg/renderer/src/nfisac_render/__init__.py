"""Figure renderer for the nfisac simulator's CSV outputs."""

from .cli import PlotSpec, load_spec, preset_spec, render
from .readers import SchemaError, read_heatmap, read_table

__version__ = "0.1.0"
