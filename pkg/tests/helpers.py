"""Shared test utilities: independent oracles and small graph corpora.

The oracles here deliberately avoid the library's own code paths: BFS runs
on plain adjacency dicts with a deque, dominating sets are checked with raw
set algebra, and structural invariants are verified from scratch.
"""

from collections import deque
from itertools import combinations

import numpy as np

from cascadia import Graph, generate_balanced_binary_tree, generate_dense, generate_ngon


def to_adjacency(g: Graph) -> dict[int, list[int]]:
    return {v: [int(u) for u in g.neighbors(v)] for v in range(g.node_count)}


def check_graph_invariants(g: Graph) -> None:
    """Undirected, simple, sorted neighbor lists, all ids in range."""
    adj = to_adjacency(g)
    for v, nbrs in adj.items():
        assert nbrs == sorted(nbrs)
        assert len(nbrs) == len(set(nbrs)), f"duplicate neighbor at {v}"
        assert v not in nbrs, f"self-loop at {v}"
        for u in nbrs:
            assert 0 <= u < g.node_count
            assert v in adj[u], f"asymmetric edge {v}-{u}"


def bfs_distances(adj: dict[int, list[int]], start: int) -> dict[int, int]:
    dist = {start: 0}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for u in adj[v]:
            if u not in dist:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def oracle_diameter(g: Graph) -> int:
    """All-pairs BFS diameter of the largest connected component."""
    adj = to_adjacency(g)
    seen: set[int] = set()
    components = []
    for v in adj:
        if v not in seen:
            comp = set(bfs_distances(adj, v))
            seen |= comp
            components.append(comp)
    largest = max(components, key=len)
    best = 0
    for v in largest:
        best = max(best, max(bfs_distances(adj, v).values()))
    return best


def oracle_is_connected(g: Graph) -> bool:
    if g.node_count == 0:
        return True
    return len(bfs_distances(to_adjacency(g), 0)) == g.node_count


def is_dominating_set(g: Graph, seed: set[int]) -> bool:
    covered = set(seed)
    for v in seed:
        covered.update(int(u) for u in g.neighbors(v))
    return len(covered) == g.node_count


def has_dominating_set(g: Graph, k: int) -> bool:
    for r in range(min(k, g.node_count) + 1):
        for combo in combinations(range(g.node_count), r):
            if is_dominating_set(g, set(combo)):
                return True
    return False


def random_connected_graph(n: int, rng: np.random.Generator, extra_edge_prob: float = 0.3) -> Graph:
    """Random spanning tree plus extra edges; always connected."""
    edges = []
    for v in range(1, n):
        edges.append((int(rng.integers(0, v)), v))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < extra_edge_prob:
                edges.append((u, v))
    return Graph.from_edges(n, edges)


def random_graph(n: int, rng: np.random.Generator, edge_prob: float = 0.4) -> Graph:
    """Erdos-Renyi style; may be disconnected."""
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < edge_prob
    ]
    return Graph.from_edges(n, edges)


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def small_graph_corpus() -> list[tuple[str, Graph]]:
    """Named generated graphs used across invariant tests."""
    corpus = [
        ("ngon3", generate_ngon(3)),
        ("ngon6", generate_ngon(6)),
        ("ngon9", generate_ngon(9)),
        ("tree1", generate_balanced_binary_tree(1)),
        ("tree7", generate_balanced_binary_tree(7)),
        ("tree15", generate_balanced_binary_tree(15)),
        ("dense1", generate_dense(1)),
        ("dense4", generate_dense(4)),
        ("dense10", generate_dense(10)),
        ("path2", path_graph(2)),
        ("path6", path_graph(6)),
        ("star5", star_graph(5)),
    ]
    rng = np.random.default_rng(2024)
    for i in range(4):
        corpus.append((f"random{i}", random_connected_graph(8, rng)))
    return corpus
