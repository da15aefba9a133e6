"""Reproducible experiment harnesses.

Three harnesses drive the engine:

* a product-vs-budget sweep: at each graph size n, a "product" player
  (budget n//50, score 1.0) and a "budget" player (budget n//10, score 0.2)
  seed uniformly at random and cascade to completion, averaged over trials;
* a strategy game matrix: every pairing from a strategy menu is simulated
  and averaged into a two-player payoff table;
* a hardness-reduction verifier: a single player with the deterministic
  neighbor-threshold rule influences the whole graph iff its seed set is a
  dominating set, checkable exactly in one run.

Every trial draws from an independent stream derived from the master seed
and the trial's coordinates, so results are bit-identical across reruns and
thread counts.
"""

from __future__ import annotations

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Sequence

import numpy as np

from .analysis import GameMatrix
from .engine import (
    CascadeOutcome,
    NeighborThreshold,
    NodeFunction,
    Player,
    resolve_seed_overlaps,
    run_cascade,
)
from .errors import BudgetViolationError, InvalidConfigurationError, InvalidParameterError
from .graph import Graph, generate_balanced_binary_tree, generate_dense, generate_ngon
from .rng import derive_rng
from .strategies import RANDOM, Strategy, select_seeds

__all__ = [
    "TOPOLOGIES",
    "PRODUCT_LABEL",
    "BUDGET_LABEL",
    "ExperimentConfig",
    "TrialRecord",
    "SweepResult",
    "ReductionInstance",
    "run_product_vs_budget",
    "run_simulation_trials",
    "run_game_matrix",
    "build_reduction_instance",
    "verify_reduction",
    "exhaustive_reduction_oracle",
    "write_trials_csv",
    "write_means_csv",
]

TOPOLOGIES: dict[str, Callable[[int], Graph]] = {
    "ngon": generate_ngon,
    "tree": generate_balanced_binary_tree,
    "dense": generate_dense,
}

PRODUCT_LABEL = "product"
BUDGET_LABEL = "budget"

TRIALS_CSV_HEADER = ("size", "trial", "player", "influenced", "timesteps", "terminated_by")
MEANS_CSV_HEADER = ("size", "player", "mean_influenced")


@dataclass(frozen=True)
class ExperimentConfig:
    """Sweep parameters: one cascade batch per (size, trial) pair.

    Budgets are floored (size // 50 and size // 10), so sizes need not be
    multiples of 50.
    """

    master_seed: int
    trials_per_point: int = 10
    sizes: tuple[int, ...] = tuple(range(1000, 9001, 1000))
    topology: str = "dense"
    step_cap: int | None = None

    def __post_init__(self):
        if self.trials_per_point < 1:
            raise InvalidConfigurationError("trials_per_point must be >= 1")
        if not self.sizes or any(s < 1 for s in self.sizes):
            raise InvalidConfigurationError("sizes must be non-empty and positive")
        if self.topology not in TOPOLOGIES:
            raise InvalidConfigurationError(
                f"unknown topology {self.topology!r}; valid: {', '.join(sorted(TOPOLOGIES))}"
            )


@dataclass(frozen=True)
class TrialRecord:
    size: int
    trial: int
    player: str
    influenced: int
    timesteps: int
    terminated_by: str


@dataclass(frozen=True)
class SweepResult:
    """Per-trial records plus per-(size, player) means, in stable order."""

    topology: str
    labels: tuple[str, ...]
    records: tuple[TrialRecord, ...]

    def means(self) -> list[tuple[int, str, float]]:
        sums: dict[tuple[int, str], list[float]] = {}
        sizes: list[int] = []
        for rec in self.records:
            if rec.size not in sizes:
                sizes.append(rec.size)
            sums.setdefault((rec.size, rec.player), []).append(rec.influenced)
        return [
            (size, label, float(np.mean(sums[(size, label)])))
            for size in sizes
            for label in self.labels
        ]

    def series(self, label: str) -> list[tuple[int, float]]:
        return [(size, mean) for size, lab, mean in self.means() if lab == label]


def _map_trials(tasks: Sequence, worker: Callable, threads: int) -> list:
    if threads <= 1:
        return [worker(t) for t in tasks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(worker, tasks))


def _uniform_seeds(g: Graph, budget: int, rng: np.random.Generator) -> set[int]:
    return select_seeds(RANDOM, g, budget, rng)


def run_product_vs_budget(cfg: ExperimentConfig, threads: int = 1) -> SweepResult:
    """Run the budget-vs-product sweep over all configured sizes.

    Sizes are processed one at a time so only one graph (dense graphs get
    large) is alive at once; trials within a size may run concurrently.
    """

    def one_trial(task: tuple[Graph, int, int]) -> list[TrialRecord]:
        g, size, trial = task
        players = (
            Player(id=1, budget=size // 50, product_score=1.0),
            Player(id=2, budget=size // 10, product_score=0.2),
        )
        rng = derive_rng(cfg.master_seed, size, trial)
        seeds = [_uniform_seeds(g, p.budget, rng) for p in players]
        assignment = resolve_seed_overlaps(seeds, players, rng)
        outcome = run_cascade(g, assignment, players, rng=rng, step_cap=cfg.step_cap)
        return [
            TrialRecord(size, trial, label, count, outcome.timesteps, outcome.terminated_by)
            for label, count in zip((PRODUCT_LABEL, BUDGET_LABEL), outcome.influenced_counts)
        ]

    records: list[TrialRecord] = []
    for size in cfg.sizes:
        g = TOPOLOGIES[cfg.topology](size)
        tasks = [(g, size, trial) for trial in range(cfg.trials_per_point)]
        for batch in _map_trials(tasks, one_trial, threads):
            records.extend(batch)
    return SweepResult(
        topology=cfg.topology,
        labels=(PRODUCT_LABEL, BUDGET_LABEL),
        records=tuple(records),
    )


def run_simulation_trials(
    g: Graph,
    players: Sequence[Player],
    strategies: Sequence[Strategy],
    trials: int,
    master_seed: int,
    step_cap: int | None = None,
    threads: int = 1,
) -> list[TrialRecord]:
    """Generic repeated-cascade harness; one strategy per player."""
    if len(strategies) != len(players):
        raise InvalidParameterError("one strategy per player is required")
    if trials < 1:
        raise InvalidParameterError("trials must be >= 1")

    def one_trial(trial: int) -> list[TrialRecord]:
        rng = derive_rng(master_seed, trial)
        seeds = [
            select_seeds(strat, g, p.budget, rng) for strat, p in zip(strategies, players)
        ]
        assignment = resolve_seed_overlaps(seeds, players, rng)
        outcome = run_cascade(g, assignment, players, rng=rng, step_cap=step_cap)
        return [
            TrialRecord(g.node_count, trial, str(p.id), count, outcome.timesteps, outcome.terminated_by)
            for p, count in zip(players, outcome.influenced_counts)
        ]

    rows = _map_trials(range(trials), one_trial, threads)
    return [rec for batch in rows for rec in batch]


def run_game_matrix(
    g: Graph,
    players: Sequence[Player],
    strategies: Sequence[Strategy],
    trials: int,
    master_seed: int,
    step_cap: int | None = None,
    threads: int = 1,
) -> GameMatrix:
    """Average cascade payoffs for every strategy pairing from one menu.

    Cell (r, c) pits players[0] using strategies[r] against players[1] using
    strategies[c]; each trial reselects seeds (only the random policy
    actually varies), resolves overlaps, and cascades to completion.
    """
    if len(players) != 2:
        raise InvalidParameterError("the game matrix is defined for exactly two players")
    if not strategies:
        raise InvalidParameterError("at least one strategy is required")
    if trials < 1:
        raise InvalidParameterError("trials must be >= 1")

    def one_cell_trial(task: tuple[int, int, int]) -> tuple[int, int, CascadeOutcome]:
        r, c, trial = task
        rng = derive_rng(master_seed, r, c, trial)
        seeds = [
            select_seeds(strategies[r], g, players[0].budget, rng),
            select_seeds(strategies[c], g, players[1].budget, rng),
        ]
        assignment = resolve_seed_overlaps(seeds, players, rng)
        return r, c, run_cascade(g, assignment, players, rng=rng, step_cap=step_cap)

    k = len(strategies)
    tasks = [(r, c, t) for r in range(k) for c in range(k) for t in range(trials)]
    payoffs = np.zeros((k, k, 2))
    for r, c, outcome in _map_trials(tasks, one_cell_trial, threads):
        payoffs[r, c, 0] += outcome.influenced_counts[0]
        payoffs[r, c, 1] += outcome.influenced_counts[1]
    payoffs /= trials
    names = tuple(s.kind for s in strategies)
    return GameMatrix(row_strategies=names, col_strategies=names, payoffs=payoffs)


@dataclass(frozen=True)
class ReductionInstance:
    """Single-player decision instance under the neighbor-threshold rule."""

    graph: Graph
    budget: int
    player: Player
    node_function: NodeFunction


def build_reduction_instance(g: Graph, k: int) -> ReductionInstance:
    if k < 0:
        raise InvalidParameterError("budget k must be >= 0")
    return ReductionInstance(
        graph=g,
        budget=k,
        player=Player(id=1, budget=k, product_score=1.0),
        node_function=NeighborThreshold(),
    )


def verify_reduction(inst: ReductionInstance, seed: Sequence[int]) -> tuple[int, bool]:
    """Influenced count for one seed set, and whether it certifies a yes-instance.

    Under the neighbor-threshold rule every outcome probability is 0 or 1, so
    a single run is exact.  The seed is a yes-witness iff the cascade reaches
    every node, which happens iff the seed set dominates the graph.
    """
    seed_set = set(int(v) for v in seed)
    if len(seed_set) > inst.budget:
        raise BudgetViolationError(
            f"seed of size {len(seed_set)} exceeds budget {inst.budget}"
        )
    players = (inst.player,)
    assignment = resolve_seed_overlaps([seed_set], players, derive_rng(0))
    outcome = run_cascade(
        inst.graph, assignment, players, node_fn=inst.node_function, rng=derive_rng(0)
    )
    influenced = outcome.influenced_counts[0]
    return influenced, influenced == inst.graph.node_count


def exhaustive_reduction_oracle(g: Graph, k: int) -> bool:
    """Brute-force the decision problem over all seed sets of size <= k.

    Answers whether any budget-k seed makes verify_reduction a witness; by
    construction this equals "g has a dominating set of size <= k".  Refused
    on graphs above 12 nodes.
    """
    if g.node_count > 12:
        raise InvalidParameterError("exhaustive check refused above 12 nodes")
    inst = build_reduction_instance(g, k)
    for r in range(min(k, g.node_count) + 1):
        for combo in combinations(range(g.node_count), r):
            if verify_reduction(inst, combo)[1]:
                return True
    return False


def write_trials_csv(records: Sequence[TrialRecord], path) -> None:
    """Per-trial rows: size,trial,player,influenced,timesteps,terminated_by."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(TRIALS_CSV_HEADER)
        for rec in records:
            writer.writerow(
                [rec.size, rec.trial, rec.player, rec.influenced, rec.timesteps, rec.terminated_by]
            )


def write_means_csv(means: Sequence[tuple[int, str, float]], path) -> None:
    """Aggregated rows: size,player,mean_influenced."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(MEANS_CSV_HEADER)
        for size, label, mean in means:
            writer.writerow([size, label, float(mean)])
