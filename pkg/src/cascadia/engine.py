"""Multi-player stochastic cascade process on undirected graphs.

The process runs in synchronous timesteps.  Each player i owns a cumulative
influenced set A_i^j; a node, once influenced, keeps its owner forever.  At
every step each still-uninfluenced node samples a single categorical outcome
(stay uninfluenced, or join one player) whose probabilities come from a
pluggable node function.  The default rule is the asymmetric weighted
cascade: for node v with e_i influenced neighbors owned by player i,

    P(v joins i) = (p_i / p_total) * (e_i / sum_e) * (1 - (1 - 1/deg(v)) ** sum_e)

where p_total sums the product scores of players with e_i > 0 and sum_e sums
all e_i.  A node that samples "stay" remains eligible on later steps.

Seed sets may overlap: a contested node joins one contender, chosen with
probability proportional to the contenders' product scores, before step 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BudgetViolationError,
    ContractViolationError,
    InvalidConfigurationError,
    InvalidParameterError,
    UndefinedDistributionError,
)
from .graph import Graph

__all__ = [
    "Player",
    "SeedAssignment",
    "CascadeState",
    "NodeOutcomeDistribution",
    "NodeFunction",
    "AsymmetricWeightedCascade",
    "NeighborThreshold",
    "CascadeOutcome",
    "ALL_INFLUENCED",
    "FRONTIER_EMPTY",
    "STEP_CAP",
    "resolve_seed_overlaps",
    "node_activation_distribution",
    "cascade_step",
    "run_cascade",
    "neighbor_threshold_node_function",
    "default_step_cap",
]

# Termination reasons reported by run_cascade.
ALL_INFLUENCED = "all-influenced"
FRONTIER_EMPTY = "frontier-empty"
STEP_CAP = "step-cap"

_SUM_TOLERANCE = 1e-12


@dataclass(frozen=True)
class Player:
    """A competitor: 1-based id, seed budget, and product score in [0, 1]."""

    id: int
    budget: int
    product_score: float

    def __post_init__(self):
        if self.id < 1:
            raise InvalidParameterError("player id must be >= 1")
        if self.budget < 0:
            raise InvalidParameterError("budget must be >= 0")
        if not 0.0 <= self.product_score <= 1.0:
            raise InvalidParameterError("product_score must lie in [0, 1]")


def _check_players(players: Sequence[Player]) -> None:
    if not players:
        raise InvalidParameterError("at least one player is required")
    ids = [p.id for p in players]
    if len(set(ids)) != len(ids):
        raise InvalidParameterError("player ids must be distinct")


@dataclass(frozen=True)
class SeedAssignment:
    """Chosen seed sets S_i and the disjoint initial influenced sets A_i^0."""

    seed_sets: tuple[frozenset[int], ...]
    initial_sets: tuple[frozenset[int], ...]


@dataclass(eq=False)
class CascadeState:
    """Cascade snapshot at one timestep.

    ``owner[v]`` is 0 while v is uninfluenced, else the id of the player that
    influenced it (permanent).  ``initial_owner`` freezes the timestep-0
    labels, which the neighbor-threshold rule consults.
    ``influenced_neighbor_counts[v, j]`` caches e_j(v), the number of
    neighbors of v in players[j]'s cumulative set; it is maintained
    incrementally and must stay equal to a recount from ``owner``.
    """

    timestep: int
    owner: np.ndarray
    initial_owner: np.ndarray
    influenced_neighbor_counts: np.ndarray
    player_ids: np.ndarray

    @classmethod
    def from_assignment(
        cls, g: Graph, assignment: SeedAssignment, players: Sequence[Player]
    ) -> "CascadeState":
        _check_players(players)
        if len(assignment.initial_sets) != len(players):
            raise InvalidParameterError("assignment arity does not match players")
        owner = np.zeros(g.node_count, dtype=np.int32)
        counts = np.zeros((g.node_count, len(players)), dtype=np.int64)
        for j, (player, members) in enumerate(zip(players, assignment.initial_sets)):
            if not members:
                continue
            nodes = np.fromiter(members, dtype=np.int64)
            if nodes.min() < 0 or nodes.max() >= g.node_count:
                raise InvalidParameterError("seed node id out of range")
            if owner[nodes].any():
                raise InvalidParameterError("initial sets must be pairwise disjoint")
            owner[nodes] = player.id
            touched = g.neighbors_of_many(nodes)
            if touched.size:
                counts[:, j] += np.bincount(touched, minlength=g.node_count)
        return cls(
            timestep=0,
            owner=owner,
            initial_owner=owner.copy(),
            influenced_neighbor_counts=counts,
            player_ids=np.asarray([p.id for p in players], dtype=np.int32),
        )

    def influenced_counts(self) -> np.ndarray:
        """Per-player influenced-node counts, in player order."""
        tally = np.bincount(self.owner, minlength=int(self.player_ids.max()) + 1)
        return tally[self.player_ids]

    def influenced_set(self, player_id: int) -> np.ndarray:
        return np.flatnonzero(self.owner == player_id)

    def uninfluenced_count(self) -> int:
        return int((self.owner == 0).sum())

    def frontier(self) -> np.ndarray:
        """Uninfluenced nodes with at least one influenced neighbor."""
        return np.flatnonzero((self.owner == 0) & (self.influenced_neighbor_counts.sum(axis=1) > 0))

    def copy(self) -> "CascadeState":
        return CascadeState(
            timestep=self.timestep,
            owner=self.owner.copy(),
            initial_owner=self.initial_owner,
            influenced_neighbor_counts=self.influenced_neighbor_counts.copy(),
            player_ids=self.player_ids,
        )


@dataclass(frozen=True)
class NodeOutcomeDistribution:
    """Categorical outcome for one node and one step.

    ``probabilities[0]`` is the stay-uninfluenced mass; ``probabilities[i]``
    (i >= 1) is the mass of joining the i-th player of the player list.
    """

    probabilities: np.ndarray

    def __post_init__(self):
        q = self.probabilities
        if (q < 0).any():
            raise InvalidParameterError("outcome probabilities must be non-negative")
        if q[1:].sum() > 1.0 + _SUM_TOLERANCE:
            raise InvalidParameterError("activation probabilities exceed 1")
        q.setflags(write=False)

    @property
    def stay(self) -> float:
        return float(self.probabilities[0])

    @property
    def activation(self) -> np.ndarray:
        return self.probabilities[1:]


def resolve_seed_overlaps(
    seeds: Sequence[Iterable[int]],
    players: Sequence[Player],
    rng: np.random.Generator,
) -> SeedAssignment:
    """Split possibly-overlapping seed sets into disjoint initial sets.

    A node chosen by exactly one player joins that player's initial set.  A
    node chosen by several joins one of them, sampled once with probability
    proportional to the contenders' product scores.  Contested nodes where
    every contender has score 0 have no defined distribution and are an
    error.
    """
    _check_players(players)
    if len(seeds) != len(players):
        raise InvalidParameterError("one seed set per player is required")
    seed_sets = tuple(frozenset(int(v) for v in s) for s in seeds)
    for player, chosen in zip(players, seed_sets):
        if any(v < 0 for v in chosen):
            raise InvalidParameterError("seed node ids must be non-negative")
        if len(chosen) > player.budget:
            raise BudgetViolationError(
                f"player {player.id} selected {len(chosen)} seeds with budget {player.budget}"
            )
    claimants: dict[int, list[int]] = {}
    for j, chosen in enumerate(seed_sets):
        for v in chosen:
            claimants.setdefault(v, []).append(j)
    winners: list[set[int]] = [set() for _ in players]
    for v in sorted(claimants):
        contenders = claimants[v]
        if len(contenders) == 1:
            winners[contenders[0]].add(v)
            continue
        scores = np.asarray([players[j].product_score for j in contenders])
        total = scores.sum()
        if total <= 0.0:
            raise UndefinedDistributionError(
                f"node {v} is contested only by players with product score 0"
            )
        pick = int(np.searchsorted(np.cumsum(scores / total), rng.random(), side="right"))
        winners[contenders[min(pick, len(contenders) - 1)]].add(v)
    return SeedAssignment(
        seed_sets=seed_sets,
        initial_sets=tuple(frozenset(w) for w in winners),
    )


def node_activation_distribution(
    g: Graph, state: CascadeState, v: int, players: Sequence[Player]
) -> NodeOutcomeDistribution:
    """Evaluate the asymmetric weighted cascade rule at one uninfluenced node.

    Recomputes the e_i counts directly from ``state.owner`` and the adjacency
    so the result is independent of the engine's incremental cache.  With no
    influenced neighbor (including the degenerate degree-0 node) the node
    stays with probability 1.  If every adjacent player has product score 0
    the formula's score ratio is undefined and the node likewise stays.
    """
    if state.owner[v] != 0:
        raise ContractViolationError(f"node {v} is already influenced")
    nbrs = g.neighbors(v)
    degree = nbrs.size
    q = np.zeros(len(players) + 1)
    owner_of_nbrs = state.owner[nbrs]
    e = np.asarray([(owner_of_nbrs == p.id).sum() for p in players], dtype=np.int64)
    sum_e = int(e.sum())
    if degree == 0 or sum_e == 0:
        q[0] = 1.0
        return NodeOutcomeDistribution(q)
    scores = np.asarray([p.product_score for p in players])
    p_total = scores[e > 0].sum()
    if p_total <= 0.0:
        q[0] = 1.0
        return NodeOutcomeDistribution(q)
    base = 1.0 - (1.0 - 1.0 / degree) ** sum_e
    q[1:] = (scores / p_total) * (e / sum_e) * base
    q[1:][e == 0] = 0.0
    q[0] = max(0.0, 1.0 - q[1:].sum())
    return NodeOutcomeDistribution(q)


class NodeFunction:
    """Pluggable rule producing per-node outcome distributions."""

    name = "custom"

    def validate_players(self, players: Sequence[Player]) -> None:
        pass

    def distribution(
        self, g: Graph, state: CascadeState, v: int, players: Sequence[Player]
    ) -> NodeOutcomeDistribution:
        raise NotImplementedError

    def activation_matrix(
        self, g: Graph, state: CascadeState, frontier: np.ndarray, players: Sequence[Player]
    ) -> np.ndarray:
        """Per-player activation probabilities for each frontier node.

        Subclasses may vectorize; the default evaluates ``distribution`` node
        by node, so any override must agree with it exactly.
        """
        out = np.zeros((frontier.size, len(players)))
        for row, v in enumerate(frontier):
            out[row] = self.distribution(g, state, int(v), players).activation
        return out


class AsymmetricWeightedCascade(NodeFunction):
    """Default rule; see the module docstring for the formula."""

    name = "asymmetric-weighted-cascade"

    def distribution(self, g, state, v, players):
        return node_activation_distribution(g, state, v, players)

    def activation_matrix(self, g, state, frontier, players):
        # Vectorized evaluation over the cached e-counts; operation order
        # mirrors node_activation_distribution so results match bitwise.
        e = state.influenced_neighbor_counts[frontier].astype(np.float64)
        sum_e = e.sum(axis=1)
        degree = g.degrees[frontier].astype(np.float64)
        scores = np.asarray([p.product_score for p in players])
        p_total = (e > 0) @ scores
        base = 1.0 - (1.0 - 1.0 / degree) ** sum_e
        with np.errstate(divide="ignore", invalid="ignore"):
            q = (scores[None, :] / p_total[:, None]) * (e / sum_e[:, None]) * base[:, None]
        q[e == 0] = 0.0
        q[p_total == 0.0] = 0.0
        return q


class NeighborThreshold(NodeFunction):
    """Deterministic single-player rule keyed to the initial seed set.

    A node joins player 1 with probability 1 iff it has a neighbor in that
    player's timestep-0 set; otherwise it stays with probability 1, forever.
    """

    name = "neighbor-threshold"

    def validate_players(self, players: Sequence[Player]) -> None:
        if len(players) != 1:
            raise InvalidConfigurationError(
                "the neighbor-threshold rule is defined for exactly one player"
            )

    def distribution(self, g, state, v, players):
        self.validate_players(players)
        if state.owner[v] != 0:
            raise ContractViolationError(f"node {v} is already influenced")
        seeded = (state.initial_owner[g.neighbors(v)] == players[0].id).any()
        return NodeOutcomeDistribution(np.array([0.0, 1.0] if seeded else [1.0, 0.0]))


def neighbor_threshold_node_function() -> NodeFunction:
    return NeighborThreshold()


def _evaluate_frontier(
    g: Graph,
    state: CascadeState,
    players: Sequence[Player],
    node_fn: NodeFunction,
) -> tuple[np.ndarray, np.ndarray]:
    frontier = state.frontier()
    if frontier.size == 0:
        return frontier, np.zeros((0, len(players)))
    return frontier, node_fn.activation_matrix(g, state, frontier, players)


def _commit_step(
    g: Graph,
    state: CascadeState,
    players: Sequence[Player],
    frontier: np.ndarray,
    activation: np.ndarray,
    rng: np.random.Generator,
) -> CascadeState:
    nxt = state.copy()
    nxt.timestep = state.timestep + 1
    if frontier.size == 0:
        return nxt
    # One uniform per frontier node (ascending node order) selects among
    # [player 1, ..., player P, stay] by inverse CDF; draws are therefore
    # independent of thread count and of node-function internals.
    cum = np.cumsum(activation, axis=1)
    draws = rng.random(frontier.size)
    activated = draws < cum[:, -1]
    if not activated.any():
        return nxt
    winner_col = (draws[:, None] < cum).argmax(axis=1)
    for col, player in enumerate(players):
        new_nodes = frontier[activated & (winner_col == col)]
        if new_nodes.size == 0:
            continue
        nxt.owner[new_nodes] = player.id
        touched = g.neighbors_of_many(new_nodes)
        if touched.size:
            nxt.influenced_neighbor_counts[:, col] += np.bincount(
                touched, minlength=g.node_count
            )
    return nxt


def cascade_step(
    g: Graph,
    state: CascadeState,
    players: Sequence[Player],
    node_fn: NodeFunction | None = None,
    rng: np.random.Generator | None = None,
) -> CascadeState:
    """Advance the cascade one synchronous timestep.

    All outcome distributions are computed against the current state before
    any activation is committed, so same-step activations never feed each
    other.  Nodes that sample "stay" remain eligible on future steps.  With
    an empty frontier the state is unchanged apart from the timestep.
    """
    if rng is None:
        raise InvalidParameterError("cascade_step requires an rng stream")
    node_fn = node_fn or AsymmetricWeightedCascade()
    node_fn.validate_players(players)
    frontier, activation = _evaluate_frontier(g, state, players, node_fn)
    return _commit_step(g, state, players, frontier, activation, rng)


@dataclass(frozen=True)
class CascadeOutcome:
    """Final per-player influenced counts and how the run ended."""

    influenced_counts: tuple[int, ...]
    timesteps: int
    terminated_by: str


def default_step_cap(g: Graph) -> int:
    """Guard rail for pathological node functions; the default rule
    terminates almost surely long before this."""
    return 100 * max(1, g.node_count)


def run_cascade(
    g: Graph,
    assignment: SeedAssignment,
    players: Sequence[Player],
    node_fn: NodeFunction | None = None,
    rng: np.random.Generator | None = None,
    step_cap: int | None = None,
) -> CascadeOutcome:
    """Run the cascade to completion from a resolved seed assignment.

    Stops when every node is influenced, when no uninfluenced node has any
    chance of activating (zero total activation mass over the frontier — the
    "stays uninfluenced with probability 1" condition, which under the
    default rule coincides with an empty frontier), or at ``step_cap`` steps.
    Hitting the cap is reported in the outcome, never raised.
    """
    if rng is None:
        raise InvalidParameterError("run_cascade requires an rng stream")
    node_fn = node_fn or AsymmetricWeightedCascade()
    node_fn.validate_players(players)
    if step_cap is None:
        step_cap = default_step_cap(g)
    state = CascadeState.from_assignment(g, assignment, players)
    reason = STEP_CAP
    while True:
        if not (state.owner == 0).any():
            reason = ALL_INFLUENCED
            break
        frontier, activation = _evaluate_frontier(g, state, players, node_fn)
        if frontier.size == 0 or float(activation.sum()) == 0.0:
            reason = FRONTIER_EMPTY
            break
        if state.timestep >= step_cap:
            break
        state = _commit_step(g, state, players, frontier, activation, rng)
    return CascadeOutcome(
        influenced_counts=tuple(int(c) for c in state.influenced_counts()),
        timesteps=state.timestep,
        terminated_by=reason,
    )
