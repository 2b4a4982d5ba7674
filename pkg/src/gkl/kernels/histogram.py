"""Vertex- and edge-label histogram kernels, the simplest explicit-feature
kernels and the default Weisfeiler-Lehman base."""

from __future__ import annotations

from typing import Any, Sequence

from ..errors import IncompatibleInput
from ..graph import Graph
from .base import FeatureMap, FeatureMapKernel, intern_label


def vertex_histogram_features(g: Graph, label_dict: dict[Any, int]) -> FeatureMap:
    """Label-id occurrence counts over the vertices; interns new labels."""
    if g.vertex_labels is None:
        raise IncompatibleInput("vertex histogram requires vertex labels")
    fm: FeatureMap = {}
    for v in range(g.n):
        idx = intern_label(label_dict, g.vertex_labels[v])
        fm[idx] = fm.get(idx, 0.0) + 1.0
    return fm


def edge_histogram_features(g: Graph, label_dict: dict[Any, int]) -> FeatureMap:
    """Label-id counts over undirected edges, each edge counted once."""
    if g.edge_labels is None:
        raise IncompatibleInput("edge histogram requires edge labels")
    fm: FeatureMap = {}
    for e in g.sorted_edges():
        idx = intern_label(label_dict, g.edge_labels[e])
        fm[idx] = fm.get(idx, 0.0) + 1.0
    return fm


class VertexHistogram(FeatureMapKernel):
    kernel_name = "vertex_histogram"

    def __init__(self, seed: int = 0):
        super().__init__()
        self.seed = seed
        self.label_dict_: dict[Any, int] = {}

    def needs_vertex_labels(self) -> bool:
        return True

    def _extract(self, graphs: Sequence[Graph], frozen: bool) -> list[FeatureMap]:
        if frozen:
            table = dict(self.label_dict_)
        else:
            self.label_dict_ = {}
            table = self.label_dict_
        return [vertex_histogram_features(g, table) for g in graphs]


class EdgeHistogram(FeatureMapKernel):
    kernel_name = "edge_histogram"

    def __init__(self, seed: int = 0):
        super().__init__()
        self.seed = seed
        self.label_dict_: dict[Any, int] = {}

    def needs_edge_labels(self) -> bool:
        return True

    def _extract(self, graphs: Sequence[Graph], frozen: bool) -> list[FeatureMap]:
        if frozen:
            table = dict(self.label_dict_)
        else:
            self.label_dict_ = {}
            table = self.label_dict_
        return [edge_histogram_features(g, table) for g in graphs]
