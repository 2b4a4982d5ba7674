import numpy as np
import pytest

from gkl.datasets import DatasetBundle, load_dataset
from gkl.errors import FetchError
from gkl.graph import Graph

_OFFLINE_REASON = (
    "dataset {name!r} unavailable: no cached copy and the repository host is "
    "unreachable from this environment. Set GKL_CACHE_DIR or run with network "
    "access to execute this check."
)

_cache: dict[str, DatasetBundle | None] = {}


def real_dataset(name: str) -> DatasetBundle:
    if name not in _cache:
        try:
            _cache[name] = load_dataset(name)
        except (FetchError, OSError):
            _cache[name] = None
    bundle = _cache[name]
    if bundle is None:
        pytest.skip(_OFFLINE_REASON.format(name=name))
    return bundle


def fixture_bundle(n_graphs: int = 20, seed: int = 7) -> DatasetBundle:
    """Deterministic labeled 2-class collection, the parity fixture."""
    rng = np.random.default_rng(seed)
    graphs = []
    targets = []
    for i in range(n_graphs):
        n = int(rng.integers(5, 13))
        cls = i % 2
        p = 0.2 + 0.5 * cls
        edges = set()
        for u in range(n):
            for v in range(u + 1, n):
                if rng.random() < p:
                    edges.add((u, v))
        vl = {v: int(rng.integers(0, 3)) for v in range(n)}
        el = {e: int(rng.integers(0, 2)) for e in edges}
        graphs.append(Graph(n=n, edges=frozenset(edges), vertex_labels=vl, edge_labels=el))
        targets.append(cls + 1)
    return DatasetBundle(
        name="PARITY",
        graphs=tuple(graphs),
        targets=tuple(targets),
        has_node_labels=True,
        has_edge_labels=True,
    )
