"""Shortest-path kernel: counts of (endpoint-label pair, hop distance) triples.

Endpoint labels are canonicalized unordered, distance-0 self pairs are
excluded, and unreachable pairs contribute nothing.
"""

from __future__ import annotations

from typing import Any, Sequence

from ..errors import IncompatibleInput
from ..graph import Graph, floyd_warshall
from .base import FeatureMap, FeatureMapKernel, intern_label

#: Stand-in vertex label for the unlabeled variant.
_DEFAULT_LABEL = object()


def shortest_path_features(
    g: Graph,
    label_dict: dict[Any, int],
    triple_dict: dict[tuple[int, int, int], int],
    with_labels: bool = True,
) -> FeatureMap:
    """Counts per (l_min, l_max, d) triple over reachable unordered pairs."""
    if with_labels and g.vertex_labels is None:
        raise IncompatibleInput("shortest path with labels requires vertex labels")
    if with_labels:
        ids = [intern_label(label_dict, g.vertex_labels[v]) for v in range(g.n)]
    else:
        default = intern_label(label_dict, _DEFAULT_LABEL)
        ids = [default] * g.n
    hops = floyd_warshall(g).hops
    fm: FeatureMap = {}
    for u in range(g.n):
        for v in range(u + 1, g.n):
            d = hops[u, v]
            if d == float("inf"):
                continue
            lu, lv = ids[u], ids[v]
            if lv < lu:
                lu, lv = lv, lu
            idx = intern_label(triple_dict, (lu, lv, int(d)))
            fm[idx] = fm.get(idx, 0.0) + 1.0
    return fm


class ShortestPath(FeatureMapKernel):
    kernel_name = "shortest_path"

    def __init__(self, with_labels: bool = True, seed: int = 0):
        super().__init__()
        self.with_labels = with_labels
        self.seed = seed
        self.label_dict_: dict[Any, int] = {}
        self.triple_dict_: dict[tuple[int, int, int], int] = {}

    def needs_vertex_labels(self) -> bool:
        return self.with_labels

    def _extract(self, graphs: Sequence[Graph], frozen: bool) -> list[FeatureMap]:
        if frozen:
            labels = dict(self.label_dict_)
            triples = dict(self.triple_dict_)
        else:
            self.label_dict_ = {}
            self.triple_dict_ = {}
            labels = self.label_dict_
            triples = self.triple_dict_
        return [shortest_path_features(g, labels, triples, self.with_labels) for g in graphs]
