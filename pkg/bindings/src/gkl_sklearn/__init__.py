"""scikit-learn front end for the gkl graph-kernel library."""

from .estimator import GraphKernel, as_graph, as_graphs

__version__ = "0.1.0"

__all__ = ["GraphKernel", "as_graph", "as_graphs"]
