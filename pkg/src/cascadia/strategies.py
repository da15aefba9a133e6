"""Seed-selection policies.

Four policies pick a player's seed set from the graph alone (never from the
opponent's choice; contested nodes are resolved later by the engine):

* random — uniform without replacement
* highest-degree — the k nodes of highest degree
* single-discount — greedy max effective degree, where each already-selected
  neighbor discounts a node's degree by 1
* degree-discount — greedy max of d_v - 2*t_v - (d_v - t_v)*t_v*p with t_v
  the number of already-selected neighbors and p a small propagation constant

The degree-based policies break every tie toward the lowest node id, so they
are fully deterministic and repeated calls agree.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError
from .graph import Graph

__all__ = [
    "Strategy",
    "RANDOM",
    "HIGHEST_DEGREE",
    "SINGLE_DISCOUNT",
    "STRATEGY_KINDS",
    "degree_discount",
    "parse_strategy",
    "select_seeds",
]

STRATEGY_KINDS = ("random", "highest-degree", "single-discount", "degree-discount")

DEFAULT_DISCOUNT_P = 0.01


@dataclass(frozen=True)
class Strategy:
    """A seed-selection policy; ``discount_probability`` only affects degree-discount."""

    kind: str
    discount_probability: float = DEFAULT_DISCOUNT_P

    def __post_init__(self):
        if self.kind not in STRATEGY_KINDS:
            raise InvalidParameterError(
                f"unknown strategy {self.kind!r}; valid: {', '.join(STRATEGY_KINDS)}"
            )
        if not 0.0 < self.discount_probability < 1.0:
            raise InvalidParameterError("discount probability must lie in (0, 1)")


RANDOM = Strategy("random")
HIGHEST_DEGREE = Strategy("highest-degree")
SINGLE_DISCOUNT = Strategy("single-discount")


def degree_discount(p: float = DEFAULT_DISCOUNT_P) -> Strategy:
    return Strategy("degree-discount", discount_probability=p)


def parse_strategy(name: str, dd_p: float = DEFAULT_DISCOUNT_P) -> Strategy:
    return Strategy(name, discount_probability=dd_p) if name == "degree-discount" else Strategy(name)


def _greedy_pick(score: np.ndarray, selectable: np.ndarray) -> int:
    """Index of the maximum score among selectable nodes, lowest id on ties."""
    masked = np.where(selectable, score, -np.inf)
    return int(np.flatnonzero(masked == masked.max())[0])


def _select_single_discount(g: Graph, k: int) -> set[int]:
    effective = g.degrees.astype(np.int64).copy()
    selectable = np.ones(g.node_count, dtype=bool)
    chosen: set[int] = set()
    for _ in range(k):
        u = _greedy_pick(effective, selectable)
        chosen.add(u)
        selectable[u] = False
        nbrs = g.neighbors(u)
        effective[nbrs[selectable[nbrs]]] -= 1
    return chosen


def _select_degree_discount(g: Graph, k: int, p: float) -> set[int]:
    d = g.degrees.astype(np.float64)
    t = np.zeros(g.node_count, dtype=np.float64)
    dd = d.copy()
    selectable = np.ones(g.node_count, dtype=bool)
    chosen: set[int] = set()
    for _ in range(k):
        u = _greedy_pick(dd, selectable)
        chosen.add(u)
        selectable[u] = False
        nbrs = g.neighbors(u)
        live = nbrs[selectable[nbrs]]
        t[live] += 1.0
        dd[live] = d[live] - 2.0 * t[live] - (d[live] - t[live]) * t[live] * p
    return chosen


def select_seeds(
    strategy: Strategy, g: Graph, budget: int, rng: np.random.Generator | None = None
) -> set[int]:
    """Pick ``min(budget, |V|)`` distinct seed nodes under the given policy."""
    if budget < 0:
        raise InvalidParameterError("budget must be >= 0")
    k = min(budget, g.node_count)
    if k == 0:
        return set()
    if strategy.kind == "random":
        if rng is None:
            raise InvalidParameterError("the random strategy requires an rng stream")
        return set(int(v) for v in rng.choice(g.node_count, size=k, replace=False))
    if strategy.kind == "highest-degree":
        ordered = np.lexsort((np.arange(g.node_count), -g.degrees))
        return set(int(v) for v in ordered[:k])
    if strategy.kind == "single-discount":
        return _select_single_discount(g, k)
    return _select_degree_discount(g, k, strategy.discount_probability)
