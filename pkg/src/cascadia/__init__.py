"""Competitive influence maximization with an asymmetric weighted cascade.

Multiple players, each with a seed budget and a product score in [0, 1],
compete to influence nodes of an undirected graph.  The package provides the
stochastic cascade engine, deterministic graph generators and metrics,
seed-selection strategies, closed-form dense-network analysis, equilibrium
detection for strategy payoff matrices, and reproducible experiment
harnesses with a CLI front end.
"""

from .analysis import (
    DenseNetworkConfig,
    GameMatrix,
    ProbabilityBounds,
    RegressionFit,
    dense_first_step_probability,
    dense_probability_bounds,
    find_dominant_strategy_equilibrium,
    find_pure_nash,
    fit_linear,
    momentum_inequality_check,
)
from .engine import (
    ALL_INFLUENCED,
    FRONTIER_EMPTY,
    STEP_CAP,
    AsymmetricWeightedCascade,
    CascadeOutcome,
    CascadeState,
    NeighborThreshold,
    NodeFunction,
    NodeOutcomeDistribution,
    Player,
    SeedAssignment,
    cascade_step,
    neighbor_threshold_node_function,
    node_activation_distribution,
    resolve_seed_overlaps,
    run_cascade,
)
from .errors import (
    BudgetViolationError,
    CascadiaError,
    ContractViolationError,
    EdgeListParseError,
    InvalidConfigurationError,
    InvalidParameterError,
    UndefinedDistributionError,
)
from .experiments import (
    ExperimentConfig,
    ReductionInstance,
    SweepResult,
    TrialRecord,
    build_reduction_instance,
    exhaustive_reduction_oracle,
    run_game_matrix,
    run_product_vs_budget,
    run_simulation_trials,
    verify_reduction,
)
from .graph import (
    Graph,
    GraphMetrics,
    compute_metrics,
    generate_balanced_binary_tree,
    generate_dense,
    generate_ngon,
    load_edge_list,
)
from .rng import derive_rng
from .strategies import Strategy, degree_discount, parse_strategy, select_seeds

__version__ = "0.1.0"
