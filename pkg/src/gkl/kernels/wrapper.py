"""General kernel wrapper: instantiates the named kernel from a KernelSpec and
composes normalization and the Nystrom approximation, in that order."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..graph import Graph
from ..nystrom import NystromState, nystrom_embed, nystrom_fit
from .base import Kernel, normalize_matrix
from .graphlet import GraphletSampling
from .histogram import EdgeHistogram, VertexHistogram
from .random_walk import RandomWalk
from .shortest_path import ShortestPath
from .spec import KernelSpec, validate_spec
from .weisfeiler_lehman import WeisfeilerLehman


def _instantiate(name: str, params: dict, seed: int, max_workers: int) -> Kernel:
    if name == "vertex_histogram":
        return VertexHistogram(seed=seed)
    if name == "edge_histogram":
        return EdgeHistogram(seed=seed)
    if name == "shortest_path":
        return ShortestPath(with_labels=params["with_labels"], seed=seed)
    if name == "graphlet_sampling":
        return GraphletSampling(
            k=params["k"],
            n_samples=params["n_samples"],
            exhaustive=params["exhaustive"],
            seed=seed,
        )
    if name == "random_walk":
        return RandomWalk(
            decay=params["lambda"],
            match_labels=params["match_labels"],
            seed=seed,
            max_workers=max_workers,
        )
    if name == "weisfeiler_lehman":
        base_name, base_params = params["base"], params["base_params"]
        return WeisfeilerLehman(
            h=params["h"],
            base_factory=lambda: _instantiate(base_name, base_params, seed, max_workers),
            seed=seed,
        )
    raise AssertionError(f"unreachable: {name}")


class GraphKernel(Kernel):
    """Uniform front door over every kernel.

    Applies, in order: the base kernel, cosine normalization when requested,
    and the Nystrom approximation when a component count is set. With Nystrom
    active, returned matrices are Gram matrices of the explicit embedding.
    """

    def __init__(self, spec: KernelSpec, max_workers: int = 1):
        self.spec = spec
        self.params = validate_spec(spec)
        self.kernel_name = spec.kernel_name
        self._base = _instantiate(spec.kernel_name, self.params, spec.seed, max_workers)
        self._fitted = False
        self._nystrom: NystromState | None = None
        self._fit_embedding: np.ndarray | None = None
        self._query_embedding: np.ndarray | None = None

    def needs_vertex_labels(self) -> bool:
        return self._base.needs_vertex_labels()

    def needs_edge_labels(self) -> bool:
        return self._base.needs_edge_labels()

    def fit(self, graphs: Sequence[Graph]) -> "GraphKernel":
        if self.spec.nystrom_components is None:
            self._base.fit(graphs)
            self._fitted = True
        else:
            # Landmark selection needs the fit matrix anyway.
            self.fit_transform(graphs)
        return self

    def fit_transform(self, graphs: Sequence[Graph]) -> np.ndarray:
        self._fitted = False
        self._query_embedding = None
        k = self._base.fit_transform(graphs)
        if self.spec.normalize:
            diag, _ = self._base.diagonal()
            k = normalize_matrix(k, diag, diag)
        if self.spec.nystrom_components is not None:
            self._nystrom = nystrom_fit(k, self.spec.nystrom_components, self.spec.seed)
            self._fit_embedding = nystrom_embed(self._nystrom, k[:, self._nystrom.landmarks])
            k = self._fit_embedding @ self._fit_embedding.T
        self._fitted = True
        return k

    def transform(self, graphs: Sequence[Graph]) -> np.ndarray:
        self._require_fitted()
        k = self._base.transform(graphs)
        if self.spec.normalize:
            fit_diag, query_diag = self._base.diagonal()
            k = normalize_matrix(k, fit_diag, query_diag)
        if self.spec.nystrom_components is not None:
            self._query_embedding = nystrom_embed(self._nystrom, k[:, self._nystrom.landmarks])
            k = self._query_embedding @ self._fit_embedding.T
        return k

    def diagonal(self) -> tuple[np.ndarray, np.ndarray | None]:
        self._require_fitted()
        if self.spec.nystrom_components is not None:
            fit_diag = np.einsum("ij,ij->i", self._fit_embedding, self._fit_embedding)
            query_diag = None
            if self._query_embedding is not None:
                query_diag = np.einsum(
                    "ij,ij->i", self._query_embedding, self._query_embedding
                )
            return fit_diag, query_diag
        fit_diag, query_diag = self._base.diagonal()
        if self.spec.normalize:
            fit_diag = (fit_diag > 0).astype(float)
            if query_diag is not None:
                query_diag = (query_diag > 0).astype(float)
        return fit_diag, query_diag


def make_kernel(spec: KernelSpec, max_workers: int = 1) -> GraphKernel:
    """Validated kernel instance implementing fit / fit_transform / transform /
    diagonal, with normalization and Nystrom composed as configured."""
    return GraphKernel(spec, max_workers=max_workers)
