"""Strategy menu as a two-player game: payoff matrices and equilibria.

Two asymmetric players — one rich in budget, one in product score — each
pick one of three seed-selection policies; averaged cascade outcomes form a
payoff matrix.  Which player wins is decided less by the policy menu than
by the graph: on a sparsely connected hub graph the 10x budget carves out
more territory, while on a well-connected low-diameter graph the score
player's per-contest advantage compounds and takes every cell.  Neither
matrix has a dominant-strategy profile here; a pure Nash equilibrium may
still exist cell-wise.
"""

import numpy as np

from cascadia import (
    Player,
    compute_metrics,
    find_dominant_strategy_equilibrium,
    find_pure_nash,
    run_game_matrix,
)
from cascadia.graph import Graph
from cascadia.strategies import HIGHEST_DEGREE, SINGLE_DISCOUNT, degree_discount


def preferential_attachment_graph(n: int, links: int, seed: int) -> Graph:
    """Hub-heavy test graph so the degree-based policies have real choices."""
    rng = np.random.default_rng(seed)
    edges = [(0, 1)]
    stubs = [0, 1]
    for v in range(2, n):
        for u in set(rng.choice(stubs, size=links).tolist()):
            edges.append((u, v))
            stubs += [u, v]
    return Graph.from_edges(n, edges)


players = (
    Player(id=1, budget=40, product_score=0.1),  # big budget, weak product
    Player(id=2, budget=4, product_score=1.0),   # tiny budget, strong product
)
menu = [SINGLE_DISCOUNT, degree_discount(0.01), HIGHEST_DEGREE]

for label, links in (("sparse", 2), ("well-connected", 10)):
    g = preferential_attachment_graph(800, links, seed=5)
    stats = compute_metrics(g)
    matrix = run_game_matrix(g, players, menu, trials=20, master_seed=11, threads=4)

    print(f"\n=== {label} graph: avg degree {stats.average_degree:.1f}, "
          f"diameter {stats.diameter} ===")
    width = max(len(name) for name in matrix.row_strategies) + 2
    print(" " * width + "".join(f"{name:>24}" for name in matrix.col_strategies))
    for r, row_name in enumerate(matrix.row_strategies):
        cells = "".join(
            f"    ({matrix.payoffs[r, c, 0]:7.1f}, {matrix.payoffs[r, c, 1]:7.1f})"
            for c in range(len(matrix.col_strategies))
        )
        print(f"{row_name:<{width}}{cells}")

    dominant = find_dominant_strategy_equilibrium(matrix)
    nash = sorted(find_pure_nash(matrix))
    print("dominant-strategy profile:", dominant if dominant else "none")
    print("pure Nash equilibria:", [
        (matrix.row_strategies[r], matrix.col_strategies[c]) for r, c in nash
    ] or "none")
    winner = "score" if (matrix.payoffs[:, :, 1] > matrix.payoffs[:, :, 0]).all() else (
        "budget" if (matrix.payoffs[:, :, 0] > matrix.payoffs[:, :, 1]).all() else "mixed"
    )
    print(f"every-cell winner: {winner} player")
