"""Weisfeiler-Lehman framework: h rounds of neighborhood-signature relabeling,
the kernel being the sum of a base kernel over all refinement levels.

Compressed label ids are assigned by first encounter scanning the collection
in input order and vertices in ascending index; each level's ids continue
where the previous level's range ended. Transform-side unseen labels and
signatures receive ids disjoint from every fit-side range, so they cannot
collide with any fit signature at later levels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np

from ..errors import GklError, IncompatibleInput, InvalidSpec
from ..graph import Graph
from .base import Kernel, intern_label
from .histogram import VertexHistogram

Signature = tuple[int, tuple[int, ...]]


@dataclass
class WlDictionary:
    """Injective signature -> compressed-id map with an explicit id cursor."""

    table: dict[Signature, int] = field(default_factory=dict)
    next_id: int = 0

    def assign(self, signature: Signature) -> int:
        idx = self.table.get(signature)
        if idx is None:
            idx = self.next_id
            self.table[signature] = idx
            self.next_id += 1
        return idx

    def transform_copy(self, fresh_start: int) -> "WlDictionary":
        """Frozen view for a transform call: known signatures keep their fit
        ids, new ones grow from the disjoint range at ``fresh_start``."""
        return WlDictionary(table=dict(self.table), next_id=fresh_start)


def wl_iteration(graphs: Sequence[Graph], dictionary: WlDictionary) -> list[Graph]:
    """One synchronous relabeling round.

    Every vertex's new label is the dictionary id of (own label, sorted
    multiset of neighbor labels), computed from the pre-iteration labels.
    """
    signatures: list[list[Signature]] = []
    for i, g in enumerate(graphs):
        if g.vertex_labels is None:
            raise IncompatibleInput(f"weisfeiler_lehman: graph {i} lacks vertex labels")
        nbrs = g.neighbor_lists()
        signatures.append(
            [
                (g.vertex_labels[v], tuple(sorted(g.vertex_labels[w] for w in nbrs[v])))
                for v in range(g.n)
            ]
        )
    # Stage 1 assigns ids in deterministic scan order, stage 2 applies them.
    for sigs in signatures:
        for s in sigs:
            dictionary.assign(s)
    return [
        g.relabeled({v: dictionary.table[sigs[v]] for v in range(g.n)})
        for g, sigs in zip(graphs, signatures)
    ]


class WeisfeilerLehman(Kernel):
    kernel_name = "weisfeiler_lehman"

    def __init__(
        self,
        h: int = 5,
        base_factory: Callable[[], Kernel] | None = None,
        seed: int = 0,
    ):
        if h < 0:
            raise InvalidSpec(f"iteration count h must be non-negative, got {h}")
        self.h = h
        self.base_factory = base_factory if base_factory is not None else VertexHistogram
        self.seed = seed
        self._fitted = False
        self._label_map: dict[Any, int] = {}
        self._level_dicts: list[WlDictionary] = []
        self._id_end = 0
        self._bases: list[Kernel] = []

    def needs_vertex_labels(self) -> bool:
        return True

    def _fit_levels(self, graphs: Sequence[Graph]) -> list[list[Graph]]:
        self._label_map = {}
        level0 = [
            g.relabeled({v: intern_label(self._label_map, g.vertex_labels[v]) for v in range(g.n)})
            for g in graphs
        ]
        levels = [level0]
        self._level_dicts = []
        next_id = len(self._label_map)
        for _ in range(self.h):
            d = WlDictionary(next_id=next_id)
            levels.append(wl_iteration(levels[-1], d))
            self._level_dicts.append(d)
            next_id = d.next_id
        self._id_end = next_id
        return levels

    def _transform_levels(self, graphs: Sequence[Graph]) -> list[list[Graph]]:
        fresh = self._id_end
        local_labels = dict(self._label_map)
        level0 = []
        for g in graphs:
            ids = {}
            for v in range(g.n):
                lab = g.vertex_labels[v]
                idx = local_labels.get(lab)
                if idx is None:
                    idx = fresh
                    fresh += 1
                    local_labels[lab] = idx
                ids[v] = idx
            level0.append(g.relabeled(ids))
        levels = [level0]
        for d in self._level_dicts:
            local = d.transform_copy(fresh)
            levels.append(wl_iteration(levels[-1], local))
            fresh = local.next_id
        return levels

    @staticmethod
    def _base_call(base: Kernel, method: str, level: int, *args):
        try:
            return getattr(base, method)(*args)
        except GklError as e:
            e.args = (f"wl level {level}: {e.args[0] if e.args else e}",) + e.args[1:]
            raise

    def fit(self, graphs: Sequence[Graph]) -> "WeisfeilerLehman":
        graphs = self._validate(graphs)
        self._fitted = False
        levels = self._fit_levels(graphs)
        self._bases = [self.base_factory() for _ in levels]
        for i, (base, level) in enumerate(zip(self._bases, levels)):
            self._base_call(base, "fit", i, level)
        self._fitted = True
        return self

    def fit_transform(self, graphs: Sequence[Graph]) -> np.ndarray:
        graphs = self._validate(graphs)
        self._fitted = False
        levels = self._fit_levels(graphs)
        self._bases = [self.base_factory() for _ in levels]
        total: np.ndarray | None = None
        for i, (base, level) in enumerate(zip(self._bases, levels)):
            k = self._base_call(base, "fit_transform", i, level)
            total = k if total is None else total + k
        self._fitted = True
        return total

    def transform(self, graphs: Sequence[Graph]) -> np.ndarray:
        self._require_fitted()
        graphs = self._validate(graphs)
        levels = self._transform_levels(graphs)
        total: np.ndarray | None = None
        for i, (base, level) in enumerate(zip(self._bases, levels)):
            k = self._base_call(base, "transform", i, level)
            total = k if total is None else total + k
        return total

    def diagonal(self) -> tuple[np.ndarray, np.ndarray | None]:
        self._require_fitted()
        fit_total: np.ndarray | None = None
        query_total: np.ndarray | None = None
        have_query = True
        for base in self._bases:
            fd, qd = base.diagonal()
            fit_total = fd if fit_total is None else fit_total + fd
            if qd is None:
                have_query = False
            elif have_query:
                query_total = qd if query_total is None else query_total + qd
        return fit_total, query_total if have_query else None
