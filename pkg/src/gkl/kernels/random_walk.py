"""Geometric random-walk kernel on the direct product graph:
k(g, h) = 1^T (I - decay * A_x)^{-1} 1, by dense LU solve.

Convergence is prechecked on the factors: the product spectral radius is the
product of the factor radii (Kronecker structure; an upper bound for the
label-restricted product), each estimated by power iteration.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import Divergent, InvalidSpec
from ..graph import Graph, direct_product
from .base import Kernel

_POWER_ITERATIONS = 20


@dataclass(frozen=True)
class WalkParams:
    """Geometric-series weight and product-graph variant selection."""

    decay: float = 0.1
    match_labels: bool = False
    spectral_margin: float = 0.99

    def __post_init__(self):
        if self.decay < 0:
            raise InvalidSpec(f"decay must be non-negative, got {self.decay}")
        if not (0 < self.spectral_margin <= 1):
            raise InvalidSpec(f"spectral_margin must be in (0, 1], got {self.spectral_margin}")


def spectral_radius_estimate(adjacency: np.ndarray, iterations: int = _POWER_ITERATIONS) -> float:
    """Power-iteration estimate of the spectral radius of a symmetric
    non-negative matrix. Exact 0 for edgeless graphs."""
    n = adjacency.shape[0]
    if n == 0 or not adjacency.any():
        return 0.0
    v = np.full(n, 1.0 / np.sqrt(n))
    rho = 0.0
    for _ in range(iterations):
        w = adjacency @ v
        rho = float(np.linalg.norm(w))
        if rho == 0.0:
            return 0.0
        v = w / rho
    return rho


def random_walk_kernel_pair(g: Graph, h: Graph, params: WalkParams) -> float:
    """Kernel value for one pair of graphs; Divergent if the geometric series
    cannot converge for the requested decay."""
    rho = spectral_radius_estimate(g.adjacency_matrix()) * spectral_radius_estimate(
        h.adjacency_matrix()
    )
    return _pair_value(g, h, rho, params)


def _order_key(g: Graph) -> tuple:
    labels = tuple(str(g.vertex_labels[v]) for v in range(g.n)) if g.vertex_labels else ()
    edge_labels = (
        tuple(str(g.edge_labels[e]) for e in g.sorted_edges()) if g.edge_labels else ()
    )
    return (g.n, g.n_edges, tuple(g.sorted_edges()), labels, edge_labels)


def _pair_value(g: Graph, h: Graph, rho_product: float, params: WalkParams) -> float:
    if params.decay * rho_product >= params.spectral_margin:
        raise Divergent(params.decay, rho_product)
    # The product graph is isomorphic under factor swap; computing on a
    # canonical factor order makes k(g, h) == k(h, g) bitwise.
    if _order_key(h) < _order_key(g):
        g, h = h, g
    product = direct_product(g, h, match_labels=params.match_labels)
    if product.n == 0:
        return 0.0
    system = np.eye(product.n) - params.decay * product.adjacency_matrix()
    ones = np.ones(product.n)
    return float(np.linalg.solve(system, ones).sum())


class RandomWalk(Kernel):
    kernel_name = "random_walk"

    def __init__(
        self,
        decay: float = 0.1,
        match_labels: bool = False,
        spectral_margin: float = 0.99,
        seed: int = 0,
        max_workers: int = 1,
    ):
        self.params = WalkParams(decay=decay, match_labels=match_labels, spectral_margin=spectral_margin)
        self.seed = seed
        self.max_workers = max_workers
        self._fitted = False
        self._graphs: list[Graph] = []
        self._rho: list[float] = []
        self._fit_diag: np.ndarray | None = None
        self._query_diag: np.ndarray | None = None

    def needs_vertex_labels(self) -> bool:
        return self.params.match_labels

    @staticmethod
    def _radii(graphs: Sequence[Graph]) -> list[float]:
        return [spectral_radius_estimate(g.adjacency_matrix()) for g in graphs]

    def fit(self, graphs: Sequence[Graph]) -> "RandomWalk":
        graphs = self._validate(graphs)
        self._graphs = graphs
        self._rho = self._radii(graphs)
        self._fit_diag = None
        self._query_diag = None
        self._fitted = True
        return self

    def _compute_cells(self, jobs):
        """jobs: iterable of (key, g, h, rho_product); returns {key: value}.

        Cells are independent; results are deterministic regardless of the
        worker count.
        """
        jobs = list(jobs)
        if self.max_workers > 1 and len(jobs) > 1:
            with ThreadPoolExecutor(max_workers=self.max_workers) as pool:
                values = list(
                    pool.map(lambda j: _pair_value(j[1], j[2], j[3], self.params), jobs)
                )
        else:
            values = [_pair_value(g, h, rho, self.params) for _, g, h, rho in jobs]
        return {job[0]: value for job, value in zip(jobs, values)}

    def fit_transform(self, graphs: Sequence[Graph]) -> np.ndarray:
        self.fit(graphs)
        n = len(self._graphs)
        jobs = [
            ((i, j), self._graphs[i], self._graphs[j], self._rho[i] * self._rho[j])
            for i in range(n)
            for j in range(i, n)
        ]
        cells = self._compute_cells(jobs)
        k = np.empty((n, n))
        for (i, j), value in cells.items():
            k[i, j] = value
            k[j, i] = value
        self._fit_diag = np.diagonal(k).copy()
        return k

    def transform(self, graphs: Sequence[Graph]) -> np.ndarray:
        self._require_fitted()
        query = self._validate(graphs)
        rho_q = self._radii(query)
        n = len(self._graphs)
        jobs = [
            ((i, j), query[i], self._graphs[j], rho_q[i] * self._rho[j])
            for i in range(len(query))
            for j in range(n)
        ]
        cells = self._compute_cells(jobs)
        k = np.empty((len(query), n))
        for (i, j), value in cells.items():
            k[i, j] = value
        diag_jobs = [
            ((i, i), query[i], query[i], rho_q[i] * rho_q[i]) for i in range(len(query))
        ]
        diag_cells = self._compute_cells(diag_jobs)
        self._query_diag = np.array([diag_cells[(i, i)] for i in range(len(query))])
        return k

    def diagonal(self) -> tuple[np.ndarray, np.ndarray | None]:
        self._require_fitted()
        if self._fit_diag is None:
            jobs = [
                ((i, i), g, g, self._rho[i] * self._rho[i])
                for i, g in enumerate(self._graphs)
            ]
            cells = self._compute_cells(jobs)
            self._fit_diag = np.array([cells[(i, i)] for i in range(len(self._graphs))])
        qd = None if self._query_diag is None else self._query_diag.copy()
        return self._fit_diag.copy(), qd
