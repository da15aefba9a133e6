import json

import numpy as np
import pytest

from cascadia import (
    DenseNetworkConfig,
    GameMatrix,
    InvalidConfigurationError,
    InvalidParameterError,
    dense_first_step_probability,
    dense_probability_bounds,
    find_dominant_strategy_equilibrium,
    find_pure_nash,
    fit_linear,
    momentum_inequality_check,
)

BASE_CFG = dict(c=0.02, m=5.0, p1=1.0, p2=0.2)

# Published nine-cell strategy payoff table used across the equilibrium tests;
# rows/cols: single-discount, degree-discount, highest-degree.
FIG3_CELLS = [
    [[3380, 5237], [3262, 5367], [3359, 5252]],
    [[3395, 5223], [3234, 5380], [3156, 5466]],
    [[3474, 5152], [3415, 5222], [3680, 4940]],
]


def fig3_matrix() -> GameMatrix:
    names = ("single-discount", "degree-discount", "highest-degree")
    return GameMatrix(names, names, np.asarray(FIG3_CELLS, dtype=np.float64))


class TestDenseFirstStep:
    def test_frozen_value_at_1001(self):
        # (1/1.2) * (1/6) * (1 - (1 - 1/1000) ** 120.12) with real-valued
        # budgets b1 = 0.02*1001, b2 = 5*0.02*1001
        cfg = DenseNetworkConfig(n=1001, **BASE_CFG)
        assert dense_first_step_probability(cfg, 1) == pytest.approx(
            0.015727678240611106, rel=1e-14
        )

    def test_zero_product_score(self):
        cfg = DenseNetworkConfig(n=1000, c=0.02, m=5.0, p1=0.0, p2=0.2)
        assert dense_first_step_probability(cfg, 1) == 0.0

    def test_ratio_condition_makes_players_equal(self):
        # b1/(b1+b2) = 1/6 = p2/(p1+p2) here, so the two values coincide
        cfg = DenseNetworkConfig(n=1000, **BASE_CFG)
        v1 = dense_first_step_probability(cfg, 1)
        v2 = dense_first_step_probability(cfg, 2)
        assert v1 == pytest.approx(v2, abs=1e-12)

    def test_rejects_overfull_graph(self):
        with pytest.raises(InvalidConfigurationError):
            DenseNetworkConfig(n=100, c=0.5, m=5.0, p1=1.0, p2=0.2)

    def test_rejects_bad_shape_parameters(self):
        with pytest.raises(InvalidConfigurationError):
            DenseNetworkConfig(n=100, c=0.0, m=5.0, p1=1.0, p2=0.2)
        with pytest.raises(InvalidConfigurationError):
            DenseNetworkConfig(n=100, c=0.02, m=1.0, p1=1.0, p2=0.2)
        with pytest.raises(InvalidConfigurationError):
            DenseNetworkConfig(n=1, c=0.02, m=5.0, p1=1.0, p2=0.2)

    def test_rejects_bad_player(self):
        cfg = DenseNetworkConfig(n=1000, **BASE_CFG)
        with pytest.raises(InvalidParameterError):
            dense_first_step_probability(cfg, 3)


class TestBounds:
    def test_frozen_interval(self):
        cfg = DenseNetworkConfig(n=1000, **BASE_CFG)
        b = dense_probability_bounds(cfg, 1)
        assert b.lower == pytest.approx(0.015705494900394794, rel=1e-14)
        assert b.upper == pytest.approx(0.021285373282982342, rel=1e-14)

    def test_closed_form_within_interval(self):
        cfg = DenseNetworkConfig(n=1000, **BASE_CFG)
        b = dense_probability_bounds(cfg, 1)
        assert b.lower <= b.closed_form(1001) <= b.upper
        assert b.closed_form(1001) == pytest.approx(0.015727678240611106, rel=1e-14)

    def test_player_two_interval_coincides_under_ratio_condition(self):
        # (p2/(p1+p2)) * (m/(m+1)) == (p1/(p1+p2)) * (1/(m+1)) for this setup
        cfg = DenseNetworkConfig(n=1000, **BASE_CFG)
        b1 = dense_probability_bounds(cfg, 1)
        b2 = dense_probability_bounds(cfg, 2)
        assert b1.lower == pytest.approx(b2.lower, abs=1e-15)
        assert b1.upper == pytest.approx(b2.upper, abs=1e-15)

    def test_containment_over_size_grid(self):
        cfg = DenseNetworkConfig(n=1000, **BASE_CFG)
        for player in (1, 2):
            b = dense_probability_bounds(cfg, player)
            for n in (1000, 2000, 5000, 10_000, 100_000, 1_000_000):
                assert b.lower <= b.closed_form(n) <= b.upper

    def test_containment_for_random_configurations(self):
        rng = np.random.default_rng(13)
        for _ in range(200):
            m = float(rng.uniform(1.01, 9.0))
            c = float(rng.uniform(0.001, 1.0 / (m + 1.0) * 0.99))
            p1 = float(rng.uniform(0.01, 1.0))
            p2 = float(rng.uniform(0.01, 1.0))
            cfg = DenseNetworkConfig(n=1000, c=c, m=m, p1=p1, p2=p2)
            for player in (1, 2):
                b = dense_probability_bounds(cfg, player)
                assert 0.0 <= b.lower <= b.upper <= 1.0
                for n in (1000, 3700, 25_000, 400_000):
                    assert b.lower <= b.closed_form(n) <= b.upper


class TestMomentumInequality:
    def test_worked_example(self):
        # 30/140 ~ 0.214 > 20/120 ~ 0.167
        assert momentum_inequality_check(20, 100, 10) is True

    def test_large_gain_example(self):
        # 1001/2003 ~ 0.4998 > 1/3
        assert momentum_inequality_check(1, 2, 1000) is True

    def test_player_two_symmetric_form(self):
        assert momentum_inequality_check(20, 100, 10, player=2) is True
        assert momentum_inequality_check(1, 2, 1000, player=2) is True

    def test_preconditions(self):
        with pytest.raises(InvalidParameterError):
            momentum_inequality_check(5, 5, 1)
        with pytest.raises(InvalidParameterError):
            momentum_inequality_check(0, 5, 1)
        with pytest.raises(InvalidParameterError):
            momentum_inequality_check(1, 5, 0)

    def test_random_triples(self):
        rng = np.random.default_rng(99)
        for _ in range(2000):
            b1 = float(rng.uniform(1e-6, 1e6))
            b2 = b1 + float(rng.uniform(1e-9, 1e6))
            x = float(rng.uniform(1e-9, 1e9))
            assert momentum_inequality_check(b1, b2, x)
            assert momentum_inequality_check(b1, b2, x, player=2)


class TestFitLinear:
    def test_exact_line(self):
        fit = fit_linear([(1, 2), (2, 4), (3, 6)])
        assert fit.slope == pytest.approx(2.0)
        assert fit.intercept == pytest.approx(0.0, abs=1e-12)
        assert fit.r_squared == pytest.approx(1.0)

    def test_hand_ols(self):
        fit = fit_linear([(1, 1), (2, 2), (3, 2)])
        assert fit.slope == pytest.approx(0.5)
        assert fit.intercept == pytest.approx(2 / 3)
        assert fit.r_squared == pytest.approx(0.75)

    def test_shifted_collinear(self):
        fit = fit_linear([(10, 105), (20, 205), (30, 305)])
        assert fit.intercept == pytest.approx(5.0)
        assert fit.r_squared == pytest.approx(1.0)

    def test_flat_series_has_unit_r_squared(self):
        assert fit_linear([(1, 3), (2, 3), (3, 3)]).r_squared == 1.0

    def test_validation(self):
        with pytest.raises(InvalidParameterError):
            fit_linear([(1, 1), (2, 2)])
        with pytest.raises(InvalidParameterError):
            fit_linear([(1, 1), (1, 2), (3, 4)])

    def test_r_squared_range_on_noise(self):
        rng = np.random.default_rng(4)
        for _ in range(100):
            pts = [(float(x), float(rng.normal())) for x in range(6)]
            fit = fit_linear(pts)
            assert -1e-9 <= fit.r_squared <= 1.0 + 1e-9


class TestEquilibria:
    def test_published_matrix_pure_nash(self):
        # cell (2, 1): 3415 is the column max, 5222 is the row max
        assert find_pure_nash(fig3_matrix()) == {(2, 1)}

    def test_published_matrix_has_no_dominant_profile(self):
        # column player's best response flips with the row, so no strategy
        # dominates for it even though row's highest-degree dominates
        assert find_dominant_strategy_equilibrium(fig3_matrix()) is None

    def test_matching_pennies_has_no_pure_nash(self):
        # the classic alternating-winner structure, shifted to stay >= 0
        m = GameMatrix(
            ("a", "b"),
            ("a", "b"),
            np.asarray([[[2, 0], [0, 2]], [[0, 2], [2, 0]]], dtype=np.float64),
        )
        assert find_pure_nash(m) == set()
        assert find_dominant_strategy_equilibrium(m) is None

    def test_strict_dominance_found_by_both(self):
        m = GameMatrix(
            ("a", "b"),
            ("a", "b"),
            np.asarray([[[5, 5], [4, 1]], [[1, 4], [0, 0]]], dtype=np.float64),
        )
        assert find_dominant_strategy_equilibrium(m) == (0, 0)
        assert (0, 0) in find_pure_nash(m)

    def test_one_by_one_matrix(self):
        m = GameMatrix(("only",), ("only",), np.asarray([[[3, 7]]], dtype=np.float64))
        assert find_pure_nash(m) == {(0, 0)}
        assert find_dominant_strategy_equilibrium(m) == (0, 0)

    def test_dominant_profile_is_always_pure_nash(self):
        rng = np.random.default_rng(8)
        for _ in range(300):
            m = GameMatrix(
                ("a", "b", "c"),
                ("a", "b", "c"),
                rng.integers(0, 50, size=(3, 3, 2)).astype(np.float64),
            )
            dom = find_dominant_strategy_equilibrium(m)
            if dom is not None:
                assert dom in find_pure_nash(m)

    def test_pure_nash_agrees_with_deviation_oracle(self):
        # oracle: a cell is an equilibrium iff no unilateral deviation
        # strictly improves either player's payoff
        rng = np.random.default_rng(123)
        for _ in range(1000):
            pay = rng.integers(0, 30, size=(3, 3, 2)).astype(np.float64)
            m = GameMatrix(("a", "b", "c"), ("a", "b", "c"), pay)
            expected = set()
            for r in range(3):
                for c in range(3):
                    row_ok = all(pay[r2, c, 0] <= pay[r, c, 0] for r2 in range(3))
                    col_ok = all(pay[r, c2, 1] <= pay[r, c, 1] for c2 in range(3))
                    if row_ok and col_ok:
                        expected.add((r, c))
            assert find_pure_nash(m) == expected


class TestGameMatrixSerialization:
    def test_round_trip(self):
        m = fig3_matrix()
        again = GameMatrix.from_json(m.to_json())
        assert again.row_strategies == m.row_strategies
        np.testing.assert_array_equal(again.payoffs, m.payoffs)

    def test_json_schema(self):
        data = json.loads(fig3_matrix().to_json())
        assert set(data) == {"row_strategies", "col_strategies", "cells"}
        assert len(data["cells"]) == 3
        assert data["cells"][2][1] == [3415, 5222]

    def test_malformed_rejected(self):
        with pytest.raises(InvalidConfigurationError):
            GameMatrix.from_dict({"row_strategies": ["a"]})
        with pytest.raises(InvalidConfigurationError):
            GameMatrix.from_dict(
                {"row_strategies": ["a"], "col_strategies": ["a"], "cells": [[[1]]]}
            )

    def test_negative_payoffs_rejected(self):
        with pytest.raises(InvalidConfigurationError):
            GameMatrix(("a",), ("a",), np.asarray([[[-1.0, 2.0]]]))
