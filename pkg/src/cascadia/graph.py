"""Immutable undirected simple graphs, deterministic generators, and metrics.

Graphs are stored in compressed sparse row form (``indptr``/``indices``)
with dense node ids ``0..node_count-1``.  Neighbor lists are sorted, free of
self-loops and duplicates, and symmetric: ``u in neighbors(v)`` iff
``v in neighbors(u)``.  Instances are safe to share across threads.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass
from typing import IO, Iterable, Iterator

import numpy as np
import scipy.sparse
import scipy.sparse.csgraph

from .errors import EdgeListParseError, InvalidParameterError

__all__ = [
    "Graph",
    "GraphMetrics",
    "generate_ngon",
    "generate_balanced_binary_tree",
    "generate_dense",
    "load_edge_list",
    "compute_metrics",
]


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected simple graph over node ids ``0..node_count-1``.

    ``indptr`` has ``node_count + 1`` entries; the (sorted) neighbors of node
    ``v`` are ``indices[indptr[v]:indptr[v+1]]``.
    """

    node_count: int
    indptr: np.ndarray
    indices: np.ndarray

    def __post_init__(self):
        self.indptr.setflags(write=False)
        self.indices.setflags(write=False)

    @classmethod
    def from_edges(cls, node_count: int, edges: Iterable[tuple[int, int]] | np.ndarray) -> "Graph":
        """Build a graph from an edge iterable, dropping self-loops and duplicates."""
        if node_count < 0:
            raise InvalidParameterError("node_count must be >= 0")
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(0, 2)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise InvalidParameterError("edges must be (u, v) pairs")
        if arr.size and (arr.min() < 0 or arr.max() >= node_count):
            raise InvalidParameterError("edge endpoint out of range")
        arr = arr[arr[:, 0] != arr[:, 1]]  # drop self-loops
        lo = np.minimum(arr[:, 0], arr[:, 1])
        hi = np.maximum(arr[:, 0], arr[:, 1])
        uniq = np.unique(lo * node_count + hi) if arr.size else np.empty(0, dtype=np.int64)
        lo, hi = uniq // node_count, uniq % node_count
        # Symmetrize, then CSR via a stable sort on (source, target).
        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        indptr = np.zeros(node_count + 1, dtype=np.int64)
        if src.size:
            indptr[1:] = np.bincount(src, minlength=node_count)
        np.cumsum(indptr, out=indptr)
        return cls(node_count=node_count, indptr=indptr, indices=dst.astype(np.int32))

    @property
    def edge_count(self) -> int:
        return self.indices.size // 2

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def has_edge(self, u: int, v: int) -> bool:
        nbrs = self.neighbors(u)
        i = np.searchsorted(nbrs, v)
        return i < nbrs.size and nbrs[i] == v

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield each undirected edge once, as (u, v) with u < v."""
        for u in range(self.node_count):
            for v in self.neighbors(u):
                if u < v:
                    yield u, int(v)

    def neighbors_of_many(self, nodes: np.ndarray) -> np.ndarray:
        """Concatenated neighbor lists of ``nodes`` (with multiplicity)."""
        nodes = np.asarray(nodes, dtype=np.int64)
        if nodes.size == 0:
            return np.empty(0, dtype=self.indices.dtype)
        starts = self.indptr[nodes]
        lens = self.indptr[nodes + 1] - starts
        total = int(lens.sum())
        if total == 0:
            return np.empty(0, dtype=self.indices.dtype)
        # Gather all CSR ranges without a Python-level loop.
        base = np.repeat(starts, lens)
        within = np.arange(total) - np.repeat(np.cumsum(lens) - lens, lens)
        return self.indices[base + within]

    def to_scipy_csr(self) -> scipy.sparse.csr_matrix:
        data = np.ones(self.indices.size, dtype=np.int8)
        return scipy.sparse.csr_matrix(
            (data, self.indices, self.indptr), shape=(self.node_count, self.node_count)
        )


@dataclass(frozen=True)
class GraphMetrics:
    """Structural summary: size, density, and diameter of the largest component."""

    nodes: int
    edges: int
    average_degree: float
    diameter: int
    is_connected: bool
    approximate: bool

    def to_dict(self) -> dict:
        return {
            "nodes": self.nodes,
            "edges": self.edges,
            "average_degree": self.average_degree,
            "diameter": self.diameter,
            "approximate": self.approximate,
            "connected": self.is_connected,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def generate_ngon(n: int) -> Graph:
    """Cycle graph 0-1-...-(n-1)-0; every node has degree 2.

    Requires n >= 3.
    """
    if n < 3:
        raise InvalidParameterError(f"an n-gon needs n >= 3, got {n}")
    ids = np.arange(n, dtype=np.int64)
    return Graph.from_edges(n, np.column_stack([ids, (ids + 1) % n]))


def generate_balanced_binary_tree(n: int) -> Graph:
    """Complete binary tree in level order: node i has children 2i+1, 2i+2.

    Requires n >= 1.  Leaves have degree 1; internal nodes degree 2 or 3.
    """
    if n < 1:
        raise InvalidParameterError(f"tree needs n >= 1, got {n}")
    children = np.arange(1, n, dtype=np.int64)
    parents = (children - 1) // 2
    return Graph.from_edges(n, np.column_stack([parents, children]))


def generate_dense(n: int) -> Graph:
    """Complete graph K_n; every node connects to every other node.

    Requires n >= 1.  Built directly in CSR form (K_9000 has 40M edges;
    routing through the edge-list builder would double the work).
    """
    if n < 1:
        raise InvalidParameterError(f"dense graph needs n >= 1, got {n}")
    indptr = np.arange(n + 1, dtype=np.int64) * (n - 1)
    grid = np.broadcast_to(np.arange(n, dtype=np.int32), (n, n))
    offdiag = ~np.eye(n, dtype=bool)
    return Graph(node_count=n, indptr=indptr, indices=grid[offdiag])


def load_edge_list(source: str | IO[str], remap: bool = False) -> Graph:
    """Parse a whitespace-separated "u v" edge list into a Graph.

    Lines starting with '#' and blank lines are ignored.  Duplicate edges and
    self-loops are silently dropped (real collaboration datasets contain
    both).  Node ids are used as-is over 0..max_id unless ``remap`` is set,
    in which case the distinct ids seen are renumbered densely in sorted
    order.
    """
    stream = io.StringIO(source) if isinstance(source, str) else source
    pairs: list[tuple[int, int]] = []
    for line_number, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise EdgeListParseError(line_number, f"expected 2 tokens, got {len(tokens)}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise EdgeListParseError(line_number, f"non-integer token in {tokens!r}") from None
        if u < 0 or v < 0:
            raise EdgeListParseError(line_number, f"negative node id in {tokens!r}")
        pairs.append((u, v))
    if not pairs:
        return Graph.from_edges(0, [])
    arr = np.asarray(pairs, dtype=np.int64)
    if remap:
        ids = np.unique(arr)
        arr = np.searchsorted(ids, arr)
        return Graph.from_edges(ids.size, arr)
    return Graph.from_edges(int(arr.max()) + 1, arr)


def _component_labels(g: Graph) -> tuple[int, np.ndarray]:
    return scipy.sparse.csgraph.connected_components(g.to_scipy_csr(), directed=False)


def _bfs_sources_max_distance(g: Graph, sources: np.ndarray) -> int:
    """Max finite shortest-path distance from any source, chunked to cap memory."""
    adj = g.to_scipy_csr()
    best = 0
    for start in range(0, sources.size, 256):
        chunk = sources[start:start + 256]
        dist = scipy.sparse.csgraph.shortest_path(
            adj, method="D", directed=False, unweighted=True, indices=chunk
        )
        finite = dist[np.isfinite(dist)]
        if finite.size:
            best = max(best, int(finite.max()))
    return best


def compute_metrics(g: Graph, exact: bool = True) -> GraphMetrics:
    """Average degree, connectivity, and diameter of the largest component.

    With ``exact`` the diameter is the max eccentricity over all nodes of the
    largest component (BFS from every node).  Otherwise it is a lower bound
    from BFS at ``max(100, ceil(sqrt(|V|)))`` start nodes taken evenly spaced
    across the component's sorted node list; the result is flagged
    ``approximate`` unless the sample covered the whole component.
    """
    if g.node_count == 0:
        raise InvalidParameterError("metrics are undefined on an empty graph")
    n_components, labels = _component_labels(g)
    sizes = np.bincount(labels, minlength=n_components)
    component = np.flatnonzero(labels == int(np.argmax(sizes)))
    if exact or component.size <= max(100, math.isqrt(g.node_count) + 1):
        sources = component
        approximate = False
    else:
        k = max(100, math.isqrt(g.node_count) + 1)
        sources = component[np.linspace(0, component.size - 1, k).astype(np.int64)]
        approximate = True
    diameter = _bfs_sources_max_distance(g, sources) if component.size > 1 else 0
    return GraphMetrics(
        nodes=g.node_count,
        edges=g.edge_count,
        average_degree=2 * g.edge_count / g.node_count,
        diameter=diameter,
        is_connected=n_components == 1,
        approximate=approximate,
    )
