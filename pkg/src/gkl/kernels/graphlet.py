"""Graphlet-sampling kernel: induced-subgraph isomorphism-class counts on k
vertices, exhaustive when cheap and uniformly sampled otherwise."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from ..errors import InvalidSpec
from ..graph import CanonicalCode, Graph, canonical_code
from .base import FeatureMap, FeatureMapKernel

_VALID_K = (3, 4, 5)
_SUBSET_BATCH = 65536


@dataclass(frozen=True)
class GraphletTable:
    """Isomorphism classes of all simple graphs on k vertices.

    ``mask_to_class`` maps every upper-triangular edge bitmask (bit p set iff
    the p-th vertex pair is an edge) to its class index, so class lookup of an
    induced subgraph needs no canonicalization.
    """

    k: int
    pair_positions: tuple[tuple[int, int], ...]
    class_codes: tuple[CanonicalCode, ...]
    mask_to_class: np.ndarray

    @property
    def n_classes(self) -> int:
        return len(self.class_codes)

    def class_of(self, g: Graph) -> int:
        """Class index of a graph of order k (used by tests as a slow path)."""
        code = canonical_code(g)
        return self.class_codes.index(code)


@lru_cache(maxsize=None)
def build_graphlet_table(k: int) -> GraphletTable:
    """Enumerate all 2^C(k,2) edge subsets and group them by canonical code."""
    if k not in _VALID_K:
        raise InvalidSpec(f"graphlet size k must be one of {_VALID_K}, got {k}")
    pairs = tuple(itertools.combinations(range(k), 2))
    class_codes: list[CanonicalCode] = []
    code_to_class: dict[CanonicalCode, int] = {}
    mask_to_class = np.empty(2 ** len(pairs), dtype=np.int64)
    for mask in range(2 ** len(pairs)):
        edges = frozenset(pairs[p] for p in range(len(pairs)) if (mask >> p) & 1)
        code = canonical_code(Graph(n=k, edges=edges))
        cls = code_to_class.get(code)
        if cls is None:
            cls = len(class_codes)
            code_to_class[code] = cls
            class_codes.append(code)
        mask_to_class[mask] = cls
    return GraphletTable(
        k=k,
        pair_positions=pairs,
        class_codes=tuple(class_codes),
        mask_to_class=mask_to_class,
    )


def per_graph_rng(seed: int, graph_index: int) -> np.random.Generator:
    """Independent generator per (collection seed, graph position)."""
    entropy = seed & 0xFFFFFFFFFFFFFFFF
    return np.random.default_rng(np.random.SeedSequence(entropy, spawn_key=(graph_index,)))


def _subset_masks(adj: np.ndarray, subsets: np.ndarray, table: GraphletTable) -> np.ndarray:
    masks = np.zeros(subsets.shape[0], dtype=np.int64)
    for p, (i, j) in enumerate(table.pair_positions):
        masks |= adj[subsets[:, i], subsets[:, j]].astype(np.int64) << p
    return masks


def _class_counts(adj: np.ndarray, subsets: np.ndarray, table: GraphletTable) -> np.ndarray:
    masks = _subset_masks(adj, subsets, table)
    return np.bincount(table.mask_to_class[masks], minlength=table.n_classes)


def graphlet_features(
    g: Graph,
    table: GraphletTable,
    n_samples: int = 5000,
    rng: np.random.Generator | None = None,
    exhaustive: bool | None = None,
) -> FeatureMap:
    """Class-count feature map over induced k-vertex subgraphs.

    Exhaustive mode counts every C(n, k) subset; sampled mode draws
    ``n_samples`` uniform k-subsets and scales counts by C(n, k)/n_samples so
    both modes estimate the same quantity. ``exhaustive=None`` picks
    exhaustive enumeration whenever C(n, k) <= 2 * n_samples. Graphs with
    fewer than k vertices get an empty feature map.
    """
    if n_samples <= 0:
        raise InvalidSpec(f"n_samples must be positive, got {n_samples}")
    k, n = table.k, g.n
    if n < k:
        return {}
    total = math.comb(n, k)
    if exhaustive is None:
        exhaustive = total <= 2 * n_samples
    adj = g.adjacency_matrix().astype(bool)
    if exhaustive:
        counts = np.zeros(table.n_classes, dtype=np.int64)
        combos = itertools.combinations(range(n), k)
        while True:
            batch = np.fromiter(
                itertools.chain.from_iterable(itertools.islice(combos, _SUBSET_BATCH)),
                dtype=np.intp,
            ).reshape(-1, k)
            if batch.size == 0:
                break
            counts += _class_counts(adj, batch, table)
        scale = 1.0
    else:
        if rng is None:
            rng = np.random.default_rng(0)
        subsets = np.argsort(rng.random((n_samples, n)), axis=1)[:, :k]
        counts = _class_counts(adj, subsets, table)
        scale = total / n_samples
    return {cls: float(c) * scale for cls, c in enumerate(counts) if c}


class GraphletSampling(FeatureMapKernel):
    kernel_name = "graphlet_sampling"

    def __init__(
        self,
        k: int = 5,
        n_samples: int = 5000,
        exhaustive: bool | None = None,
        seed: int = 0,
    ):
        super().__init__()
        if k not in _VALID_K:
            raise InvalidSpec(f"graphlet size k must be one of {_VALID_K}, got {k}")
        if n_samples <= 0:
            raise InvalidSpec(f"n_samples must be positive, got {n_samples}")
        self.k = k
        self.n_samples = n_samples
        self.exhaustive = exhaustive
        self.seed = seed

    def _extract(self, graphs: Sequence[Graph], frozen: bool) -> list[FeatureMap]:
        table = build_graphlet_table(self.k)
        return [
            graphlet_features(
                g,
                table,
                n_samples=self.n_samples,
                rng=per_graph_rng(self.seed, i),
                exhaustive=self.exhaustive,
            )
            for i, g in enumerate(graphs)
        ]
