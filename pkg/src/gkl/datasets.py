"""Benchmark-dataset ingestion: HTTP fetch with local caching and a parser for
the multi-file plain-text collection format (edge list + graph indicator +
per-graph labels, with optional vertex/edge labels and attributes).
"""

from __future__ import annotations

import io
import os
import posixpath
import zipfile
from dataclasses import dataclass
from pathlib import Path

import requests
from filelock import FileLock

from .errors import CorruptDataset, FetchError, ParseError
from .graph import Graph

DEFAULT_BASE_URL = "https://www.chrsmrrs.com/graphkerneldatasets"
CACHE_ENV_VAR = "GKL_CACHE_DIR"


@dataclass(frozen=True)
class DatasetBundle:
    """Parsed graph collection with per-graph class targets."""

    name: str
    graphs: tuple[Graph, ...]
    targets: tuple[int, ...]
    has_node_labels: bool = False
    has_edge_labels: bool = False
    has_node_attributes: bool = False
    has_edge_attributes: bool = False

    def __post_init__(self):
        if len(self.graphs) != len(self.targets):
            raise CorruptDataset(
                f"{self.name}: {len(self.graphs)} graphs but {len(self.targets)} targets"
            )

    @property
    def classes(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.targets)))

    def __len__(self) -> int:
        return len(self.graphs)


def resolve_cache_dir(cache_dir: str | os.PathLike | None = None) -> Path:
    """Explicit argument > GKL_CACHE_DIR > platform data directory."""
    if cache_dir is not None:
        return Path(cache_dir)
    env = os.environ.get(CACHE_ENV_VAR)
    if env:
        return Path(env)
    xdg = os.environ.get("XDG_DATA_HOME")
    base = Path(xdg) if xdg else Path.home() / ".local" / "share"
    return base / "gkl" / "datasets"


def _required_files(name: str) -> list[str]:
    return [f"{name}_A.txt", f"{name}_graph_indicator.txt", f"{name}_graph_labels.txt"]


def dataset_cached(name: str, cache_dir: str | os.PathLike | None = None) -> bool:
    target = resolve_cache_dir(cache_dir) / name
    return all((target / f).exists() for f in _required_files(name))


def fetch_dataset(
    name: str,
    base_url: str = DEFAULT_BASE_URL,
    cache_dir: str | os.PathLike | None = None,
    timeout: float = 60.0,
) -> Path:
    """Download and extract a dataset archive, or reuse the cached copy.

    Returns the directory that holds the extracted text files. Safe against
    concurrent fetches of the same dataset via a file lock.
    """
    root = resolve_cache_dir(cache_dir)
    target = root / name
    if dataset_cached(name, cache_dir):
        return target
    root.mkdir(parents=True, exist_ok=True)
    with FileLock(str(root / f".{name}.lock")):
        if dataset_cached(name, cache_dir):
            return target
        url = f"{base_url.rstrip('/')}/{name}.zip"
        try:
            response = requests.get(url, timeout=timeout)
        except requests.RequestException as e:
            raise FetchError(f"GET {url}: {e}") from e
        if response.status_code != 200:
            raise FetchError(f"GET {url}", status=response.status_code)
        try:
            archive = zipfile.ZipFile(io.BytesIO(response.content))
        except zipfile.BadZipFile as e:
            raise CorruptDataset(f"{name}: downloaded archive is not a zip file") from e
        target.mkdir(exist_ok=True)
        with archive:
            for member in archive.namelist():
                base = posixpath.basename(member)
                if base.startswith(f"{name}_") and base.endswith(".txt"):
                    (target / base).write_bytes(archive.read(member))
        missing = [f for f in _required_files(name) if not (target / f).exists()]
        if missing:
            raise CorruptDataset(f"{name}: archive lacks required files {missing}")
    return target


def _read_lines(path: Path) -> list[str]:
    lines = path.read_text().splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    return lines


def _parse_int(token: str, filename: str, lineno: int) -> int:
    try:
        return int(token.strip())
    except ValueError:
        raise ParseError(f"{filename}:{lineno}: non-numeric token {token.strip()!r}") from None


def _parse_vector(line: str, filename: str, lineno: int) -> tuple[float, ...]:
    out = []
    for token in line.split(","):
        try:
            out.append(float(token.strip()))
        except ValueError:
            raise ParseError(
                f"{filename}:{lineno}: non-numeric token {token.strip()!r}"
            ) from None
    return tuple(out)


def parse_tu(directory: str | os.PathLike, name: str) -> DatasetBundle:
    """Assemble graphs from the extracted dataset files.

    Edge lines are 1-indexed global vertex pairs, typically listed in both
    directions; the parser symmetrizes and deduplicates. Every edge must stay
    inside one graph per the graph indicator.
    """
    directory = Path(directory)
    for fname in _required_files(name):
        if not (directory / fname).exists():
            raise CorruptDataset(f"{name}: missing required file {fname}")

    ind_name = f"{name}_graph_indicator.txt"
    indicator_lines = _read_lines(directory / ind_name)
    indicator = [
        _parse_int(line, ind_name, i + 1) for i, line in enumerate(indicator_lines)
    ]
    n_vertices = len(indicator)
    if n_vertices == 0:
        raise CorruptDataset(f"{name}: empty graph indicator")

    graph_index: dict[int, int] = {}
    local_index: list[int] = []
    sizes: list[int] = []
    for gid in indicator:
        if gid not in graph_index:
            graph_index[gid] = len(graph_index)
            sizes.append(0)
        g = graph_index[gid]
        local_index.append(sizes[g])
        sizes[g] += 1
    n_graphs = len(sizes)

    a_name = f"{name}_A.txt"
    a_lines = _read_lines(directory / a_name)
    edge_sets: list[dict[tuple[int, int], int]] = [dict() for _ in range(n_graphs)]
    edge_owner: list[tuple[int, tuple[int, int]]] = []
    for lineno, line in enumerate(a_lines, start=1):
        tokens = line.split(",")
        if len(tokens) != 2:
            raise ParseError(f"{a_name}:{lineno}: expected 'i, j', got {line!r}")
        u = _parse_int(tokens[0], a_name, lineno)
        v = _parse_int(tokens[1], a_name, lineno)
        if not (1 <= u <= n_vertices and 1 <= v <= n_vertices):
            raise CorruptDataset(
                f"{a_name}:{lineno}: vertex id outside 1..{n_vertices}"
            )
        gu, gv = graph_index[indicator[u - 1]], graph_index[indicator[v - 1]]
        if gu != gv:
            raise CorruptDataset(
                f"{a_name}:{lineno}: edge ({u}, {v}) crosses graphs {gu + 1} and {gv + 1}"
            )
        if u == v:
            raise CorruptDataset(f"{a_name}:{lineno}: self-loop on vertex {u}")
        lu, lv = local_index[u - 1], local_index[v - 1]
        edge = (lu, lv) if lu < lv else (lv, lu)
        edge_sets[gu].setdefault(edge, lineno)
        edge_owner.append((gu, edge))

    lab_name = f"{name}_graph_labels.txt"
    label_lines = _read_lines(directory / lab_name)
    if len(label_lines) != n_graphs:
        raise CorruptDataset(
            f"{lab_name}: {len(label_lines)} labels for {n_graphs} graphs"
        )
    targets = tuple(_parse_int(line, lab_name, i + 1) for i, line in enumerate(label_lines))

    def _aligned(fname: str, expected: int, what: str) -> list[str] | None:
        path = directory / fname
        if not path.exists():
            return None
        lines = _read_lines(path)
        if len(lines) != expected:
            raise CorruptDataset(f"{fname}: {len(lines)} lines but {expected} {what}")
        return lines

    node_label_lines = _aligned(f"{name}_node_labels.txt", n_vertices, "vertices")
    edge_label_lines = _aligned(f"{name}_edge_labels.txt", len(a_lines), "edge entries")
    node_attr_lines = _aligned(f"{name}_node_attributes.txt", n_vertices, "vertices")
    edge_attr_lines = _aligned(f"{name}_edge_attributes.txt", len(a_lines), "edge entries")

    vertex_labels: list[dict[int, int]] | None = None
    if node_label_lines is not None:
        vertex_labels = [dict() for _ in range(n_graphs)]
        fname = f"{name}_node_labels.txt"
        for i, line in enumerate(node_label_lines):
            g = graph_index[indicator[i]]
            vertex_labels[g][local_index[i]] = _parse_int(line, fname, i + 1)

    vertex_attrs: list[dict[int, tuple[float, ...]]] | None = None
    if node_attr_lines is not None:
        vertex_attrs = [dict() for _ in range(n_graphs)]
        fname = f"{name}_node_attributes.txt"
        dim: int | None = None
        for i, line in enumerate(node_attr_lines):
            vec = _parse_vector(line, fname, i + 1)
            if dim is None:
                dim = len(vec)
            elif len(vec) != dim:
                raise ParseError(
                    f"{fname}:{i + 1}: ragged attribute row (dim {len(vec)} != {dim})"
                )
            g = graph_index[indicator[i]]
            vertex_attrs[g][local_index[i]] = vec

    edge_labels: list[dict[tuple[int, int], int]] | None = None
    if edge_label_lines is not None:
        edge_labels = [dict() for _ in range(n_graphs)]
        fname = f"{name}_edge_labels.txt"
        for lineno, ((g, edge), line) in enumerate(zip(edge_owner, edge_label_lines), start=1):
            edge_labels[g].setdefault(edge, _parse_int(line, fname, lineno))

    edge_attrs: list[dict[tuple[int, int], tuple[float, ...]]] | None = None
    if edge_attr_lines is not None:
        edge_attrs = [dict() for _ in range(n_graphs)]
        fname = f"{name}_edge_attributes.txt"
        dim = None
        for lineno, ((g, edge), line) in enumerate(zip(edge_owner, edge_attr_lines), start=1):
            vec = _parse_vector(line, fname, lineno)
            if dim is None:
                dim = len(vec)
            elif len(vec) != dim:
                raise ParseError(
                    f"{fname}:{lineno}: ragged attribute row (dim {len(vec)} != {dim})"
                )
            edge_attrs[g].setdefault(edge, vec)

    graphs = []
    for g in range(n_graphs):
        graphs.append(
            Graph(
                n=sizes[g],
                edges=frozenset(edge_sets[g]),
                vertex_labels=vertex_labels[g] if vertex_labels is not None else None,
                vertex_attributes=vertex_attrs[g] if vertex_attrs is not None else None,
                edge_labels=edge_labels[g] if edge_labels is not None else None,
                edge_attributes=edge_attrs[g] if edge_attrs is not None else None,
            )
        )
    return DatasetBundle(
        name=name,
        graphs=tuple(graphs),
        targets=targets,
        has_node_labels=node_label_lines is not None,
        has_edge_labels=edge_label_lines is not None,
        has_node_attributes=node_attr_lines is not None,
        has_edge_attributes=edge_attr_lines is not None,
    )


def load_dataset(
    name: str,
    base_url: str = DEFAULT_BASE_URL,
    cache_dir: str | os.PathLike | None = None,
) -> DatasetBundle:
    """fetch_dataset followed by parse_tu."""
    return parse_tu(fetch_dataset(name, base_url=base_url, cache_dir=cache_dir), name)


def write_tu_dataset(directory: str | os.PathLike, name: str, bundle: DatasetBundle) -> Path:
    """Write a bundle back out in the on-disk dataset format.

    Edge entries are listed in both directions, matching the repository files.
    Mainly useful for fixtures and offline mirrors.
    """
    directory = Path(directory) / name
    directory.mkdir(parents=True, exist_ok=True)
    offsets = []
    total = 0
    for g in bundle.graphs:
        offsets.append(total)
        total += g.n

    indicator_lines = []
    for gid, g in enumerate(bundle.graphs, start=1):
        indicator_lines.extend([str(gid)] * g.n)
    (directory / f"{name}_graph_indicator.txt").write_text("\n".join(indicator_lines) + "\n")
    (directory / f"{name}_graph_labels.txt").write_text(
        "\n".join(str(t) for t in bundle.targets) + "\n"
    )

    a_lines = []
    directed_edges: list[tuple[int, tuple[int, int]]] = []
    for gi, g in enumerate(bundle.graphs):
        for u, v in g.sorted_edges():
            for a, b in ((u, v), (v, u)):
                a_lines.append(f"{offsets[gi] + a + 1}, {offsets[gi] + b + 1}")
                directed_edges.append((gi, (min(a, b), max(a, b))))
    (directory / f"{name}_A.txt").write_text("\n".join(a_lines) + "\n")

    if bundle.has_node_labels:
        lines = []
        for g in bundle.graphs:
            lines.extend(str(g.vertex_labels[v]) for v in range(g.n))
        (directory / f"{name}_node_labels.txt").write_text("\n".join(lines) + "\n")
    if bundle.has_node_attributes:
        lines = []
        for g in bundle.graphs:
            lines.extend(
                ", ".join(f"{x:.17g}" for x in g.vertex_attributes[v]) for v in range(g.n)
            )
        (directory / f"{name}_node_attributes.txt").write_text("\n".join(lines) + "\n")
    if bundle.has_edge_labels:
        lines = [str(bundle.graphs[gi].edge_labels[edge]) for gi, edge in directed_edges]
        (directory / f"{name}_edge_labels.txt").write_text("\n".join(lines) + "\n")
    if bundle.has_edge_attributes:
        lines = [
            ", ".join(f"{x:.17g}" for x in bundle.graphs[gi].edge_attributes[edge])
            for gi, edge in directed_edges
        ]
        (directory / f"{name}_edge_attributes.txt").write_text("\n".join(lines) + "\n")
    return directory
