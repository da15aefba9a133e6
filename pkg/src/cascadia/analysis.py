"""Closed-form dense-network analysis, regression, and equilibrium detection.

On the complete graph K_n with two players holding disjoint seed sets of
sizes b1 = c*n and b2 = m*c*n (c in (0,1), m > 1), the first-step
probability that a given unseeded node joins player 1 is

    (p1 / (p1 + p2)) * (b1 / (b1 + b2)) * (1 - (1 - 1/(n-1)) ** (b1 + b2))

and symmetrically for player 2 with share b2/(b1+b2).  Because
(1 - 1/k) ** k lies in [1/4, 1/e] for k >= 2, that probability is pinned
between two expressions in c and m alone — independent of n — which is why
influenced counts grow linearly with graph size.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from .errors import InvalidConfigurationError, InvalidParameterError

__all__ = [
    "DenseNetworkConfig",
    "ProbabilityBounds",
    "GameMatrix",
    "RegressionFit",
    "dense_first_step_probability",
    "dense_probability_bounds",
    "momentum_inequality_check",
    "fit_linear",
    "find_dominant_strategy_equilibrium",
    "find_pure_nash",
]


@dataclass(frozen=True)
class DenseNetworkConfig:
    """Two-player complete-graph setup with budgets proportional to size.

    Budgets are the real numbers b1 = c*n and b2 = m*c*n (the analysis treats
    budget as a continuous function of n; simulations floor them).
    """

    n: int
    c: float
    m: float
    p1: float
    p2: float

    def __post_init__(self):
        if self.n < 2:
            raise InvalidConfigurationError("dense network needs n >= 2")
        if not 0.0 < self.c < 1.0:
            raise InvalidConfigurationError("c must lie in (0, 1)")
        if self.m <= 1.0:
            raise InvalidConfigurationError("m must exceed 1")
        if not (0.0 <= self.p1 <= 1.0 and 0.0 <= self.p2 <= 1.0):
            raise InvalidConfigurationError("product scores must lie in [0, 1]")
        if (self.m + 1.0) * self.c > 1.0:
            raise InvalidConfigurationError(
                "total seeds b1 + b2 = (m+1)*c*n exceed the graph"
            )

    @property
    def b1(self) -> float:
        return self.c * self.n

    @property
    def b2(self) -> float:
        return self.m * self.c * self.n


@dataclass(frozen=True)
class ProbabilityBounds:
    """Size-independent interval containing the first-step probability.

    ``closed_form(n)`` evaluates the exact probability at any size; for all
    n >= 1000 it lies in [lower, upper].
    """

    lower: float
    upper: float
    closed_form: Callable[[int], float]


def _score_and_share(cfg: DenseNetworkConfig, player: int) -> tuple[float, float]:
    if player == 1:
        return cfg.p1 / (cfg.p1 + cfg.p2), 1.0 / (cfg.m + 1.0)
    if player == 2:
        return cfg.p2 / (cfg.p1 + cfg.p2), cfg.m / (cfg.m + 1.0)
    raise InvalidParameterError("player must be 1 or 2")


def dense_first_step_probability(cfg: DenseNetworkConfig, player: int) -> float:
    """Exact probability that an unseeded node joins ``player`` on step 1.

    Assumes the two seed sets are disjoint (reasonable when budgets are small
    relative to n; overlaps only help the higher-scored player).
    """
    score, share = _score_and_share(cfg, player)
    total_seeds = cfg.b1 + cfg.b2
    return score * share * (1.0 - (1.0 - 1.0 / (cfg.n - 1)) ** total_seeds)


def dense_probability_bounds(cfg: DenseNetworkConfig, player: int) -> ProbabilityBounds:
    """Lower/upper bounds on the first-step probability, independent of n."""
    score, share = _score_and_share(cfg, player)
    exponent = (cfg.m + 1.0) * cfg.c
    lower = score * share * (1.0 - math.exp(-exponent))
    upper = score * share * (1.0 - 4.0 ** (-exponent))
    return ProbabilityBounds(
        lower=lower,
        upper=upper,
        closed_form=lambda n: dense_first_step_probability(replace(cfg, n=n), player),
    )


def momentum_inequality_check(b1: float, b2: float, x: float, player: int = 1) -> bool:
    """Check the compounding-advantage inequality after an equal gain x.

    For player 1 (the smaller budget): (b1+x)/(b1+b2+2x) > b1/(b1+b2).
    For player 2 the symmetric form flips to "<".  Both hold for every
    b2 > b1 > 0 and x > 0; this exists as a property-test oracle.  Compared
    via cross-multiplication to avoid division error.
    """
    if not (b2 > b1 > 0.0):
        raise InvalidParameterError("requires b2 > b1 > 0")
    if x <= 0.0:
        raise InvalidParameterError("requires x > 0")
    if player == 1:
        return (b1 + x) * (b1 + b2) > b1 * (b1 + b2 + 2.0 * x)
    if player == 2:
        return (b2 + x) * (b1 + b2) < b2 * (b1 + b2 + 2.0 * x)
    raise InvalidParameterError("player must be 1 or 2")


@dataclass(frozen=True)
class RegressionFit:
    slope: float
    intercept: float
    r_squared: float


def fit_linear(points: Sequence[tuple[float, float]]) -> RegressionFit:
    """Ordinary least squares over (size, mean count) pairs.

    Needs at least 3 points with distinct sizes.  A perfectly flat series has
    zero residual and is reported as r_squared = 1.
    """
    if len(points) < 3:
        raise InvalidParameterError("regression needs at least 3 points")
    x = np.asarray([p[0] for p in points], dtype=np.float64)
    y = np.asarray([p[1] for p in points], dtype=np.float64)
    if np.unique(x).size != x.size:
        raise InvalidParameterError("regression sizes must be distinct")
    slope, intercept = np.polyfit(x, y, 1)
    residuals = y - (slope * x + intercept)
    ss_res = float((residuals**2).sum())
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r_squared = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return RegressionFit(slope=float(slope), intercept=float(intercept), r_squared=r_squared)


@dataclass(frozen=True, eq=False)
class GameMatrix:
    """Two-player payoff table: ``payoffs[r, c]`` = (row payoff, col payoff)."""

    row_strategies: tuple[str, ...]
    col_strategies: tuple[str, ...]
    payoffs: np.ndarray

    def __post_init__(self):
        expected = (len(self.row_strategies), len(self.col_strategies), 2)
        if self.payoffs.shape != expected:
            raise InvalidConfigurationError(
                f"payoff array shape {self.payoffs.shape} != {expected}"
            )
        if (self.payoffs < 0).any():
            raise InvalidConfigurationError("payoffs must be non-negative")
        self.payoffs.setflags(write=False)

    def to_dict(self) -> dict:
        return {
            "row_strategies": list(self.row_strategies),
            "col_strategies": list(self.col_strategies),
            "cells": self.payoffs.tolist(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> "GameMatrix":
        try:
            return cls(
                row_strategies=tuple(data["row_strategies"]),
                col_strategies=tuple(data["col_strategies"]),
                payoffs=np.asarray(data["cells"], dtype=np.float64),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidConfigurationError(f"malformed game matrix: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "GameMatrix":
        return cls.from_dict(json.loads(text))


def find_pure_nash(matrix: GameMatrix) -> set[tuple[int, int]]:
    """All cells where both strategies are simultaneous (weak) best responses."""
    pay = matrix.payoffs
    row_best = pay[:, :, 0] == pay[:, :, 0].max(axis=0, keepdims=True)
    col_best = pay[:, :, 1] == pay[:, :, 1].max(axis=1, keepdims=True)
    return {(int(r), int(c)) for r, c in np.argwhere(row_best & col_best)}


def find_dominant_strategy_equilibrium(matrix: GameMatrix) -> tuple[int, int] | None:
    """The profile of strategies that weakly best-respond to *every* opposing
    strategy, or None if either player lacks one.

    This is the stricter notion sometimes conflated with a pure Nash
    equilibrium; any profile found here is also a pure Nash equilibrium.
    Should several strategies tie as dominant, the lowest-indexed one is
    reported (the payoff rows/columns are then identical in the best spots).
    """
    pay = matrix.payoffs
    row_best = pay[:, :, 0] == pay[:, :, 0].max(axis=0, keepdims=True)
    col_best = pay[:, :, 1] == pay[:, :, 1].max(axis=1, keepdims=True)
    dominant_rows = np.flatnonzero(row_best.all(axis=1))
    dominant_cols = np.flatnonzero(col_best.all(axis=0))
    if dominant_rows.size == 0 or dominant_cols.size == 0:
        return None
    return int(dominant_rows[0]), int(dominant_cols[0])
