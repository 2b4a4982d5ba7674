"""Immutable simple undirected graphs and the algorithms shared by the kernels."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from .errors import IncompatibleInput, InvalidGraph, SizeLimit

#: Sentinel distance for disconnected vertex pairs. Never a finite number.
UNREACHABLE = math.inf

Edge = tuple[int, int]


def _as_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1.

    Labels are opaque discrete symbols; attributes are fixed-dimension real
    vectors. When a label or attribute map is present it must cover every
    vertex (resp. edge). Instances are immutable and safe to share.
    """

    n: int
    edges: frozenset[Edge] = field(default_factory=frozenset)
    vertex_labels: dict[int, Any] | None = None
    vertex_attributes: dict[int, tuple[float, ...]] | None = None
    edge_labels: dict[Edge, Any] | None = None
    edge_attributes: dict[Edge, tuple[float, ...]] | None = None

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise InvalidGraph(f"vertex count must be a non-negative integer, got {self.n!r}")
        canon = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise InvalidGraph(f"self-loop on vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidGraph(f"edge {e} has an endpoint outside 0..{self.n - 1}")
            canon.add(_as_edge(u, v))
        object.__setattr__(self, "edges", frozenset(canon))
        if self.vertex_labels is not None:
            object.__setattr__(self, "vertex_labels", dict(self.vertex_labels))
            self._check_vertex_map(self.vertex_labels, "vertex_labels")
        if self.vertex_attributes is not None:
            attrs = {v: tuple(float(x) for x in vec) for v, vec in self.vertex_attributes.items()}
            object.__setattr__(self, "vertex_attributes", attrs)
            self._check_vertex_map(attrs, "vertex_attributes")
            self._check_uniform_dim(attrs.values(), "vertex")
        if self.edge_labels is not None:
            labels = {_as_edge(*e): lab for e, lab in self.edge_labels.items()}
            object.__setattr__(self, "edge_labels", labels)
            self._check_edge_map(labels, "edge_labels")
        if self.edge_attributes is not None:
            attrs = {_as_edge(*e): tuple(float(x) for x in vec) for e, vec in self.edge_attributes.items()}
            object.__setattr__(self, "edge_attributes", attrs)
            self._check_edge_map(attrs, "edge_attributes")
            self._check_uniform_dim(attrs.values(), "edge")

    def _check_vertex_map(self, mapping: Mapping[int, Any], what: str) -> None:
        if set(mapping) != set(range(self.n)):
            raise InvalidGraph(f"{what} must cover exactly the vertices 0..{self.n - 1}")

    def _check_edge_map(self, mapping: Mapping[Edge, Any], what: str) -> None:
        if set(mapping) != self.edges:
            raise InvalidGraph(f"{what} must cover exactly the edge set")

    @staticmethod
    def _check_uniform_dim(vectors: Iterable[tuple[float, ...]], what: str) -> None:
        dims = {len(vec) for vec in vectors}
        if len(dims) > 1:
            raise InvalidGraph(f"{what} attribute vectors have mixed dimensions {sorted(dims)}")

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return _as_edge(u, v) in self.edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def neighbor_lists(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            out[u].append(v)
            out[v].append(u)
        for lst in out:
            lst.sort()
        return out

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for u, v in self.edges:
            a[u, v] = 1.0
            a[v, u] = 1.0
        return a

    def relabeled(self, vertex_labels: Mapping[int, Any]) -> "Graph":
        """Copy with new vertex labels and identical structure."""
        return replace(self, vertex_labels=dict(vertex_labels))


@dataclass(frozen=True)
class DistanceMatrix:
    """All-pairs hop distances; disconnected pairs hold UNREACHABLE."""

    hops: np.ndarray

    def __getitem__(self, idx) -> float:
        return float(self.hops[idx])

    @property
    def n(self) -> int:
        return self.hops.shape[0]

    def reachable(self, u: int, v: int) -> bool:
        return math.isfinite(self.hops[u, v])


@dataclass(frozen=True)
class CanonicalCode:
    """Permutation-invariant encoding of a small graph.

    Two graphs of equal order are isomorphic iff their codes are equal.
    """

    n: int
    bits: int


def from_adjacency(
    matrix,
    vertex_labels: Mapping[int, Any] | None = None,
    vertex_attributes: Mapping[int, Sequence[float]] | None = None,
    edge_labels: Mapping[Edge, Any] | None = None,
    edge_attributes: Mapping[Edge, Sequence[float]] | None = None,
) -> Graph:
    """Build a graph from a 0/1 symmetric adjacency matrix with zero diagonal."""
    a = np.asarray(matrix)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidGraph(f"adjacency matrix must be square, got shape {a.shape}")
    n = a.shape[0]
    if not np.isin(a, (0, 1)).all():
        raise InvalidGraph("adjacency entries must be 0 or 1")
    if not np.array_equal(a, a.T):
        raise InvalidGraph("adjacency matrix must be symmetric")
    if n and np.diagonal(a).any():
        raise InvalidGraph("adjacency diagonal must be zero (no self-loops)")
    edges = frozenset((int(u), int(v)) for u, v in zip(*np.nonzero(np.triu(a))))
    return Graph(
        n=n,
        edges=edges,
        vertex_labels=dict(vertex_labels) if vertex_labels is not None else None,
        vertex_attributes=dict(vertex_attributes) if vertex_attributes is not None else None,
        edge_labels=dict(edge_labels) if edge_labels is not None else None,
        edge_attributes=dict(edge_attributes) if edge_attributes is not None else None,
    )


def from_edge_dictionary(
    adjacency: Mapping[int, Iterable[int]],
    n: int | None = None,
    vertex_labels: Mapping[int, Any] | None = None,
    vertex_attributes: Mapping[int, Sequence[float]] | None = None,
    edge_labels: Mapping[Edge, Any] | None = None,
    edge_attributes: Mapping[Edge, Sequence[float]] | None = None,
) -> Graph:
    """Build a graph from an adjacency-list dictionary.

    Neighbor lists may be one-sided; the edge set is symmetrized. Isolated
    vertices survive either as explicit keys with empty lists or implicitly
    when ``n`` is declared. A neighbor id that is neither a key nor below a
    declared ``n`` is a dangling reference.
    """
    for k in adjacency:
        if not isinstance(k, int) or k < 0:
            raise InvalidGraph(f"vertex ids must be non-negative integers, got {k!r}")
    if n is None:
        n = max(adjacency, default=-1) + 1
    elif any(k >= n for k in adjacency):
        raise InvalidGraph(f"vertex key >= declared n={n}")
    edges = set()
    for u, nbrs in adjacency.items():
        for v in nbrs:
            if not isinstance(v, int):
                raise InvalidGraph(f"neighbor ids must be integers, got {v!r}")
            if v == u:
                raise InvalidGraph(f"self-loop on vertex {u}")
            if v not in adjacency and not (0 <= v < n):
                raise InvalidGraph(f"dangling vertex id {v} in neighbors of {u}")
            edges.add(_as_edge(u, v))
    return Graph(
        n=n,
        edges=frozenset(edges),
        vertex_labels=dict(vertex_labels) if vertex_labels is not None else None,
        vertex_attributes=dict(vertex_attributes) if vertex_attributes is not None else None,
        edge_labels=dict(edge_labels) if edge_labels is not None else None,
        edge_attributes=dict(edge_attributes) if edge_attributes is not None else None,
    )


def floyd_warshall(g: Graph) -> DistanceMatrix:
    """All-pairs hop-count distances, UNREACHABLE for disconnected pairs."""
    n = g.n
    d = np.full((n, n), UNREACHABLE)
    np.fill_diagonal(d, 0.0)
    for u, v in g.edges:
        d[u, v] = 1.0
        d[v, u] = 1.0
    for k in range(n):
        np.minimum(d, d[:, k : k + 1] + d[k : k + 1, :], out=d)
    return DistanceMatrix(hops=d)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph on the given vertices, re-indexed in ascending original order."""
    s = sorted(set(vertices))
    for v in s:
        if not (isinstance(v, int) and 0 <= v < g.n):
            raise InvalidGraph(f"vertex {v!r} outside 0..{g.n - 1}")
    index = {v: i for i, v in enumerate(s)}
    keep = set(s)
    edges = frozenset(
        (index[u], index[v]) for u, v in g.edges if u in keep and v in keep
    )
    return Graph(
        n=len(s),
        edges=edges,
        vertex_labels={index[v]: g.vertex_labels[v] for v in s} if g.vertex_labels else None,
        vertex_attributes={index[v]: g.vertex_attributes[v] for v in s} if g.vertex_attributes else None,
        edge_labels=(
            {(index[u], index[v]): g.edge_labels[_as_edge(u, v)] for u, v in g.edges if u in keep and v in keep}
            if g.edge_labels is not None
            else None
        ),
        edge_attributes=(
            {(index[u], index[v]): g.edge_attributes[_as_edge(u, v)] for u, v in g.edges if u in keep and v in keep}
            if g.edge_attributes is not None
            else None
        ),
    )


def direct_product(g: Graph, h: Graph, match_labels: bool = False) -> Graph:
    """Tensor (direct) product graph of two factors.

    Vertices are the pairs (u, u') in lexicographic order, restricted to
    equal-label pairs when ``match_labels`` is set. An edge joins (u, u') and
    (v, v') iff {u, v} is an edge of ``g`` and {u', v'} one of ``h``; with
    ``match_labels`` the two factor edges must also agree on edge labels when
    both graphs carry them.
    """
    if match_labels and (g.vertex_labels is None or h.vertex_labels is None):
        raise IncompatibleInput("match_labels requires vertex labels on both factors")
    index: dict[tuple[int, int], int] = {}
    for u in range(g.n):
        for v in range(h.n):
            if match_labels and g.vertex_labels[u] != h.vertex_labels[v]:
                continue
            index[(u, v)] = len(index)
    match_edge_labels = match_labels and g.edge_labels is not None and h.edge_labels is not None
    edges = set()
    for eg in g.edges:
        for eh in h.edges:
            if match_edge_labels and g.edge_labels[eg] != h.edge_labels[eh]:
                continue
            (u, v), (a, b) = eg, eh
            for p, q in (((u, a), (v, b)), ((u, b), (v, a))):
                if p in index and q in index:
                    edges.add(_as_edge(index[p], index[q]))
    return Graph(n=len(index), edges=frozenset(edges))


_MAX_CANONICAL_ORDER = 8


def canonical_code(g: Graph) -> CanonicalCode:
    """Lexicographically minimal upper-triangular adjacency over all vertex
    permutations. Brute force, hence the hard order bound."""
    n = g.n
    if n > _MAX_CANONICAL_ORDER:
        raise SizeLimit(f"canonical codes support n <= {_MAX_CANONICAL_ORDER}, got {n}")
    pairs = list(itertools.combinations(range(n), 2))
    npairs = len(pairs)
    if npairs == 0:
        return CanonicalCode(n=n, bits=0)
    adj = [[False] * n for _ in range(n)]
    for u, v in g.edges:
        adj[u][v] = adj[v][u] = True
    best: int | None = None
    for perm in itertools.permutations(range(n)):
        code = 0
        for pos, (i, j) in enumerate(pairs):
            if adj[perm[i]][perm[j]]:
                code |= 1 << (npairs - 1 - pos)
        if best is None or code < best:
            best = code
    return CanonicalCode(n=n, bits=best)
