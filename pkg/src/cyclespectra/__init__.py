"""Cycle-length spectra of graphs and constructive certificates for consecutive cycle lengths."""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("artifact")
except PackageNotFoundError:  # running from a source tree
    __version__ = "0.1.0"

from .graph import CycleWitness, Graph, GraphError, PathWitness, girth
from .spectrum import CycleSpectrum, cycle_spectrum, has_cycle_of_length, longest_run

__all__ = [
    "CycleSpectrum",
    "CycleWitness",
    "Graph",
    "GraphError",
    "PathWitness",
    "__version__",
    "cycle_spectrum",
    "girth",
    "has_cycle_of_length",
    "longest_run",
]
