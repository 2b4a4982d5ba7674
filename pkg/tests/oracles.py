"""Independent reference implementations used to check the library.

Everything here is deliberately written the slow, obvious way (BFS loops,
quadruple loops, truncated series, projected gradient) and stays independent
of the code paths it verifies.
"""

from __future__ import annotations

import itertools
import math
from collections import deque

import numpy as np

from gkl.graph import Graph


def random_graph(rng: np.random.Generator, n: int, p: float, labels: int | None = None,
                 edge_labels: int | None = None) -> Graph:
    edges = set()
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.add((u, v))
    vl = {v: int(rng.integers(labels)) for v in range(n)} if labels else None
    el = {e: int(rng.integers(edge_labels)) for e in edges} if edge_labels else None
    return Graph(n=n, edges=frozenset(edges), vertex_labels=vl, edge_labels=el)


def permute_graph(g: Graph, perm: list[int]) -> Graph:
    """Relabel vertices: new vertex perm[v] corresponds to old vertex v."""
    edges = frozenset(tuple(sorted((perm[u], perm[v]))) for u, v in g.edges)
    vl = {perm[v]: lab for v, lab in g.vertex_labels.items()} if g.vertex_labels else None
    el = (
        {tuple(sorted((perm[u], perm[v]))): lab for (u, v), lab in g.edge_labels.items()}
        if g.edge_labels
        else None
    )
    return Graph(n=g.n, edges=edges, vertex_labels=vl, edge_labels=el)


def bfs_distances(g: Graph) -> np.ndarray:
    """Per-source BFS hop distances; inf for unreachable pairs."""
    nbrs = g.neighbor_lists()
    out = np.full((g.n, g.n), math.inf)
    for s in range(g.n):
        out[s, s] = 0.0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in nbrs[u]:
                if math.isinf(out[s, w]):
                    out[s, w] = out[s, u] + 1
                    queue.append(w)
    return out


def connected_components(g: Graph) -> list[list[int]]:
    d = bfs_distances(g)
    seen = set()
    comps = []
    for v in range(g.n):
        if v in seen:
            continue
        comp = [w for w in range(g.n) if math.isfinite(d[v, w])]
        seen.update(comp)
        comps.append(comp)
    return comps


def sp_kernel_bruteforce(g: Graph, h: Graph) -> float:
    """O(n^4) shortest-path kernel: compare every vertex pair of g with every
    vertex pair of h on (unordered endpoint labels, distance)."""
    dg, dh = bfs_distances(g), bfs_distances(h)
    total = 0.0
    for u, v in itertools.combinations(range(g.n), 2):
        if math.isinf(dg[u, v]):
            continue
        lg = tuple(sorted((g.vertex_labels[u], g.vertex_labels[v])))
        for a, b in itertools.combinations(range(h.n), 2):
            if math.isinf(dh[a, b]):
                continue
            lh = tuple(sorted((h.vertex_labels[a], h.vertex_labels[b])))
            if lg == lh and dg[u, v] == dh[a, b]:
                total += 1.0
    return total


def histogram_kernel_bruteforce(labels_g: list, labels_h: list) -> float:
    """Sum over label pairs of count products, via direct comparison."""
    return float(sum(1 for a in labels_g for b in labels_h if a == b))


def truncated_walk_series(g: Graph, h: Graph, decay: float, terms: int) -> float:
    """sum_{l<=terms} decay^l * (number of length-l walk pairs), via repeated
    multiplication by the Kronecker-product adjacency."""
    a = np.kron(g.adjacency_matrix(), h.adjacency_matrix())
    n = a.shape[0]
    if n == 0:
        return 0.0
    vec = np.ones(n)
    total = vec.sum()
    power = vec
    for l in range(1, terms + 1):
        power = a @ power
        total += (decay**l) * power.sum()
    return float(total)


def are_isomorphic(g: Graph, h: Graph) -> bool:
    """Brute-force isomorphism by permutation search (structures only)."""
    if g.n != h.n or len(g.edges) != len(h.edges):
        return False
    for perm in itertools.permutations(range(g.n)):
        if all(tuple(sorted((perm[u], perm[v]))) in h.edges for u, v in g.edges):
            return True
    return False


def product_edge_count_bruteforce(g: Graph, h: Graph) -> int:
    """Direct-product edge count straight from the definition."""
    count = 0
    pairs = [(u, a) for u in range(g.n) for a in range(h.n)]
    for (u, a), (v, b) in itertools.combinations(pairs, 2):
        if g.has_edge(u, v) and h.has_edge(a, b):
            count += 1
    return count


def projected_gradient_dual(
    k: np.ndarray,
    y: np.ndarray,
    c: float,
    steps: int = 4000,
    lr: float | None = None,
) -> tuple[np.ndarray, float]:
    """Reference solver for the SVM dual by projected gradient ascent.

    The projection onto {0 <= alpha <= C, y^T alpha = 0} solves for the
    equality constraint's multiplier mu exactly: g(mu) = y^T clip(v - mu*y)
    is piecewise linear and non-increasing, so the zero lies between two
    consecutive clipping breakpoints and is found by interpolation.
    """
    n = k.shape[0]
    q = k * np.outer(y, y)

    def project(v: np.ndarray) -> np.ndarray:
        breaks = np.sort(np.concatenate([y * v, y * (v - c)]))
        g = np.clip(v[None, :] - breaks[:, None] * y[None, :], 0.0, c) @ y
        idx = int(np.searchsorted(-g, 0.0, side="left"))  # first g <= 0
        if idx == 0:
            mu = breaks[0]
        elif g[idx - 1] == g[idx]:
            mu = breaks[idx]
        else:
            span = breaks[idx] - breaks[idx - 1]
            mu = breaks[idx - 1] + g[idx - 1] * span / (g[idx - 1] - g[idx])
        return np.clip(v - mu * y, 0.0, c)

    if lr is None:
        lam = float(np.linalg.eigvalsh(q)[-1])
        lr = 1.0 / max(lam, 1e-9)
    alpha = project(np.zeros(n))
    for _ in range(steps):
        grad = 1.0 - q @ alpha
        alpha = project(alpha + lr * grad)
    objective = float(alpha.sum() - 0.5 * alpha @ q @ alpha)
    return alpha, objective
