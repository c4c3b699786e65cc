"""Render simulation result CSVs into publication-style SVG panels.

Consumes only the CSV contract of the simulation CLI ('#'-prefixed metadata
block, header row, float columns); three panel kinds are supported:

* ``eigenfan``     - energy levels versus a sweep axis (long-format table);
* ``spectrum``     - emission spectra versus detuning, curves overlaid;
* ``populations``  - steady-state occupations versus laser detuning.

Output is deterministic: identical inputs yield byte-identical SVG text.
"""

from .csvio import SchemaError, Table, read_table
from .panels import PanelSpec, load_spec, render

__all__ = [
    "PanelSpec",
    "SchemaError",
    "Table",
    "load_spec",
    "read_table",
    "render",
    "__version__",
]

__version__ = "0.1.0"
