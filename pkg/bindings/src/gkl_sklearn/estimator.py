"""scikit-learn transformer wrapping the core graph-kernel library.

Thin delegation only: graph conversion happens once at the fit/transform
boundary, every kernel value comes from the core, and core errors surface as
the host ecosystem's conventional exceptions with identical messages.
"""

from __future__ import annotations

from contextlib import contextmanager
from typing import Any, Iterable, Mapping

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError
from sklearn.utils.validation import check_is_fitted

from gkl import Graph, KernelSpec, from_adjacency, from_edge_dictionary, make_kernel
from gkl.errors import GklError, NotFitted


@contextmanager
def _host_errors():
    try:
        yield
    except NotFitted as e:
        raise NotFittedError(str(e)) from e
    except GklError as e:
        raise ValueError(str(e)) from e


def as_graph(item: Any) -> Graph:
    """Accept a core Graph or an (adjacency | edge dict, vertex-label map,
    edge-label map) tuple; label maps may be omitted or None."""
    if isinstance(item, Graph):
        return item
    if isinstance(item, (tuple, list)) and 1 <= len(item) <= 3:
        structure = item[0]
        vertex_labels = item[1] if len(item) > 1 else None
        edge_labels = item[2] if len(item) > 2 else None
        if isinstance(structure, Mapping):
            return from_edge_dictionary(
                structure, vertex_labels=vertex_labels, edge_labels=edge_labels
            )
        return from_adjacency(structure, vertex_labels=vertex_labels, edge_labels=edge_labels)
    raise ValueError(
        "expected a Graph or an (adjacency/edge-dict, vertex labels, edge labels) tuple, "
        f"got {type(item).__name__}"
    )


def as_graphs(collection: Iterable[Any]) -> list[Graph]:
    return [as_graph(item) for item in collection]


class GraphKernel(TransformerMixin, BaseEstimator):
    """Graph-kernel transformer returning kernel matrices as numpy arrays.

    Parameters mirror the core KernelSpec: ``kernel_name``, a ``params`` dict
    following the named kernel's schema, ``normalize``, ``nystrom_components``
    and ``seed``. Precomputed-kernel estimators downstream consume the
    returned matrices directly.
    """

    def __init__(
        self,
        kernel_name: str = "vertex_histogram",
        params: dict | None = None,
        normalize: bool = False,
        nystrom_components: int | None = None,
        seed: int = 0,
    ):
        self.kernel_name = kernel_name
        self.params = params
        self.normalize = normalize
        self.nystrom_components = nystrom_components
        self.seed = seed

    def _spec(self) -> KernelSpec:
        return KernelSpec(
            kernel_name=self.kernel_name,
            params=dict(self.params) if self.params else {},
            normalize=self.normalize,
            nystrom_components=self.nystrom_components,
            seed=self.seed,
        )

    def fit(self, X, y=None) -> "GraphKernel":
        graphs = as_graphs(X)
        with _host_errors():
            kernel = make_kernel(self._spec())
            kernel.fit(graphs)
        self.kernel_ = kernel
        self.n_fit_graphs_ = len(graphs)
        return self

    def fit_transform(self, X, y=None) -> np.ndarray:
        graphs = as_graphs(X)
        with _host_errors():
            kernel = make_kernel(self._spec())
            values = kernel.fit_transform(graphs)
        self.kernel_ = kernel
        self.n_fit_graphs_ = len(graphs)
        return np.array(values, dtype=float, order="C")

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "kernel_")
        graphs = as_graphs(X)
        with _host_errors():
            values = self.kernel_.transform(graphs)
        return np.array(values, dtype=float, order="C")

    def diagonal(self) -> tuple[np.ndarray, np.ndarray | None]:
        check_is_fitted(self, "kernel_")
        with _host_errors():
            return self.kernel_.diagonal()
