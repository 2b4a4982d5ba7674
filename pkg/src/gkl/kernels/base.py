"""Estimator contract shared by every kernel: fit / fit_transform / transform /
diagonal, plus feature-map plumbing and kernel-matrix normalization."""

from __future__ import annotations

import warnings
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, ClassVar, Sequence

import numpy as np
from scipy import sparse

from ..errors import EmptyCollection, IncompatibleInput, InvalidShape, NotFitted, NumericalError
from ..graph import Graph

#: Sparse feature vector: dimension id -> non-negative count.
FeatureMap = dict[int, float]


class ZeroSelfKernelWarning(UserWarning):
    """A graph with zero self-kernel had its normalized row/column coerced to 0."""


@dataclass(frozen=True)
class KernelMatrix:
    """Dense kernel matrix plus its role: n x n on the fit set or m x n cross."""

    values: np.ndarray
    role: str  # "fit_square" | "cross"

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 2:
            raise InvalidShape(f"kernel matrix must be 2-D, got ndim={v.ndim}")
        if self.role not in ("fit_square", "cross"):
            raise InvalidShape(f"unknown matrix role {self.role!r}")
        if self.role == "fit_square" and v.shape[0] != v.shape[1]:
            raise InvalidShape(f"fit_square matrix must be square, got {v.shape}")
        object.__setattr__(self, "values", v)

    @property
    def rows(self) -> int:
        return self.values.shape[0]

    @property
    def cols(self) -> int:
        return self.values.shape[1]


def fm_dot(a: FeatureMap, b: FeatureMap) -> float:
    """Dot product of two sparse feature maps."""
    if len(b) < len(a):
        a, b = b, a
    return sum(v * b.get(k, 0.0) for k, v in a.items())


def _csr_rows(maps: Sequence[FeatureMap], dim: int) -> sparse.csr_matrix:
    indptr = [0]
    indices: list[int] = []
    data: list[float] = []
    for m in maps:
        for k, v in sorted(m.items()):
            indices.append(k)
            data.append(v)
        indptr.append(len(indices))
    return sparse.csr_matrix((data, indices, indptr), shape=(len(maps), dim))


def gram_matrix(query_maps: Sequence[FeatureMap], fit_maps: Sequence[FeatureMap]) -> np.ndarray:
    """Dense matrix of pairwise feature-map dot products (query rows, fit cols)."""
    dim = 0
    for m in query_maps:
        if m:
            dim = max(dim, max(m) + 1)
    for m in fit_maps:
        if m:
            dim = max(dim, max(m) + 1)
    q = _csr_rows(query_maps, dim)
    f = _csr_rows(fit_maps, dim)
    return np.asarray((q @ f.T).todense(), dtype=float)


def normalize_matrix(k: np.ndarray, fit_diag, query_diag) -> np.ndarray:
    """Cosine normalization K(i,j)/sqrt(d_q(i) d_f(j)).

    Entries whose denominator involves a zero self-kernel are coerced to 0 and
    a ZeroSelfKernelWarning naming the graph indices is emitted. Negative
    self-kernels violate positive semidefiniteness and are a hard error.
    """
    k = np.asarray(k, dtype=float)
    fd = np.asarray(fit_diag, dtype=float)
    qd = np.asarray(query_diag, dtype=float)
    if k.ndim != 2 or k.shape != (qd.shape[0], fd.shape[0]):
        raise InvalidShape(
            f"matrix shape {k.shape} does not match diagonals ({qd.shape[0]}, {fd.shape[0]})"
        )
    if (fd < 0).any() or (qd < 0).any():
        raise NumericalError("negative self-kernel value; input is not PSD")
    zero_f = np.nonzero(fd == 0)[0]
    zero_q = np.nonzero(qd == 0)[0]
    if zero_f.size or zero_q.size:
        parts = []
        if zero_f.size:
            parts.append(f"fit graphs {zero_f.tolist()}")
        if zero_q.size:
            parts.append(f"query graphs {zero_q.tolist()}")
        warnings.warn(
            "zero self-kernel for " + " and ".join(parts) + "; normalized entries coerced to 0",
            ZeroSelfKernelWarning,
            stacklevel=2,
        )
    denom = np.sqrt(np.outer(qd, fd))
    out = np.zeros_like(k)
    np.divide(k, denom, out=out, where=denom > 0)
    return out


class Kernel(ABC):
    """Base class of every graph kernel.

    fit extracts kernel-dependent features from a graph collection;
    fit_transform additionally returns the n x n kernel matrix; transform
    computes the m x n matrix between new graphs and the fit collection;
    diagonal returns the self-kernel values of the fit graphs and, after a
    transform, of the most recent query graphs.
    """

    kernel_name: ClassVar[str] = "abstract"

    def needs_vertex_labels(self) -> bool:
        return False

    def needs_edge_labels(self) -> bool:
        return False

    def _validate(self, graphs: Sequence[Graph]) -> list[Graph]:
        graphs = list(graphs)
        if not graphs:
            raise EmptyCollection(f"{self.kernel_name}: empty graph collection")
        for i, g in enumerate(graphs):
            if not isinstance(g, Graph):
                raise IncompatibleInput(f"{self.kernel_name}: item {i} is not a Graph")
            if self.needs_vertex_labels() and g.vertex_labels is None:
                raise IncompatibleInput(f"{self.kernel_name}: graph {i} lacks vertex labels")
            if self.needs_edge_labels() and g.edge_labels is None:
                raise IncompatibleInput(f"{self.kernel_name}: graph {i} lacks edge labels")
        return graphs

    def _require_fitted(self) -> None:
        if not getattr(self, "_fitted", False):
            raise NotFitted(f"{self.kernel_name}: transform/diagonal before fit")

    @abstractmethod
    def fit(self, graphs: Sequence[Graph]) -> "Kernel":
        """Extract and store fit-side state; returns self."""

    @abstractmethod
    def fit_transform(self, graphs: Sequence[Graph]) -> np.ndarray:
        """Fit and return the n x n kernel matrix of the collection."""

    @abstractmethod
    def transform(self, graphs: Sequence[Graph]) -> np.ndarray:
        """Return the m x n matrix between new graphs and the fit collection."""

    @abstractmethod
    def diagonal(self) -> tuple[np.ndarray, np.ndarray | None]:
        """Self-kernel values of the fit graphs, and of the last query set if
        transform has been called."""


class FeatureMapKernel(Kernel):
    """Shared machinery for kernels with explicit sparse feature maps.

    Subclasses implement feature extraction; the Gram computation, the
    transform-side frozen-dictionary discipline and the diagonal cache live
    here. Dimension ids unseen at fit time land beyond the fit range, so they
    contribute nothing to cross products.
    """

    def __init__(self):
        self._fitted = False
        self._features: list[FeatureMap] = []
        self._fit_diag: np.ndarray | None = None
        self._query_diag: np.ndarray | None = None

    @abstractmethod
    def _extract(self, graphs: Sequence[Graph], frozen: bool) -> list[FeatureMap]:
        """Feature maps for the graphs; frozen extraction must not mutate fit state."""

    def fit(self, graphs: Sequence[Graph]) -> "FeatureMapKernel":
        graphs = self._validate(graphs)
        self._fitted = False
        self._features = self._extract(graphs, frozen=False)
        self._fit_diag = None
        self._query_diag = None
        self._fitted = True
        return self

    def fit_transform(self, graphs: Sequence[Graph]) -> np.ndarray:
        self.fit(graphs)
        return gram_matrix(self._features, self._features)

    def transform(self, graphs: Sequence[Graph]) -> np.ndarray:
        self._require_fitted()
        graphs = self._validate(graphs)
        query = self._extract(graphs, frozen=True)
        self._query_diag = np.array([fm_dot(m, m) for m in query])
        return gram_matrix(query, self._features)

    def diagonal(self) -> tuple[np.ndarray, np.ndarray | None]:
        self._require_fitted()
        if self._fit_diag is None:
            self._fit_diag = np.array([fm_dot(m, m) for m in self._features])
        qd = None if self._query_diag is None else self._query_diag.copy()
        return self._fit_diag.copy(), qd

    @property
    def fit_size(self) -> int:
        self._require_fitted()
        return len(self._features)


def intern_label(table: dict[Any, int], label: Any) -> int:
    """Dense-integer interning with insertion order; grows the table in place."""
    idx = table.get(label)
    if idx is None:
        idx = len(table)
        table[label] = idx
    return idx
