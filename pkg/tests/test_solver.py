"""Unit tests for the welfare-maximization solver: exact DP, the
block-count-bounded variant, and maximizer enumeration — each checked
against plain enumeration."""

from fractions import Fraction

import pytest

from coalstab import (
    BOUNDED_SOLVER_CAP,
    MAXIMIZER_CAP,
    SOLVER_CAP,
    CapExceededError,
    Game,
    GeneratorSpec,
    Partition,
    all_maximizers,
    enumerate_partitions,
    example_game,
    optimal_partition,
    optimal_partition_bounded,
    random_game,
    social_welfare,
)
from conftest import brute_force_optimum


class TestOptimalPartition:
    def test_three_player_example_frozen(self):
        g = example_game("exa-a")
        res = optimal_partition(g)
        assert res.optimum == 7
        # several partitions tie at 7; the DP prefers the one whose blocks
        # have the smallest bit patterns, which is {1} {2,3}
        assert res.witness == Partition.parse("{1} {2,3}")
        assert social_welfare(g, res.witness) == 7

    def test_single_player(self):
        g = Game.from_table(1, {(1,): 9})
        res = optimal_partition(g)
        assert res.optimum == 9 and res.witness == Partition.grand(1)

    def test_negative_values(self):
        g = Game.from_table(2, {(1,): -1, (2,): -2, (1, 2): -5})
        res = optimal_partition(g)
        assert res.optimum == -3 and res.witness == Partition.singletons(2)

    def test_fractional_values(self):
        g = Game.from_table(2, {(1,): "1/3", (2,): "1/3", (1, 2): "1/2"})
        assert optimal_partition(g).optimum == Fraction(2, 3)

    @pytest.mark.parametrize("seed", range(12))
    def test_matches_enumeration(self, seed):
        n = 3 + seed % 4
        g = random_game(GeneratorSpec(n=n, kind="general", seed=seed))
        res = optimal_partition(g)
        best, _ = brute_force_optimum(g)
        assert res.optimum == best
        assert social_welfare(g, res.witness) == res.optimum

    def test_result_is_cached(self):
        g = example_game("exa-1")
        assert optimal_partition(g) is optimal_partition(g)

    def test_cap(self):
        g = Game.from_rule(SOLVER_CAP + 1, lambda m: 0)
        with pytest.raises(CapExceededError):
            optimal_partition(g)


class TestBoundedSolver:
    def test_frozen_example(self):
        # exa-a: best single block is 6, best with two blocks is 7
        g = example_game("exa-a")
        assert optimal_partition_bounded(g, 1).optimum == 6
        assert optimal_partition_bounded(g, 2).optimum == 7
        assert optimal_partition_bounded(g, 3).optimum == 7

    def test_k_one_is_grand(self):
        g = example_game("exa-2")
        res = optimal_partition_bounded(g, 1)
        assert res.witness == Partition.grand(4)
        assert res.optimum == g.mask_value(g.full_mask)

    @pytest.mark.parametrize("seed", range(8))
    def test_monotone_and_consistent(self, seed):
        n = 3 + seed % 3
        g = random_game(GeneratorSpec(n=n, kind="general", seed=100 + seed))
        unbounded = optimal_partition(g).optimum
        prev = None
        for k in range(1, n + 1):
            res = optimal_partition_bounded(g, k)
            assert len(res.witness) <= k
            assert social_welfare(g, res.witness) == res.optimum
            # oracle: best over partitions with at most k blocks
            oracle = max(
                social_welfare(g, q) for q in enumerate_partitions(n) if len(q) <= k
            )
            assert res.optimum == oracle
            if prev is not None:
                assert res.optimum >= prev
            prev = res.optimum
        assert prev == unbounded

    def test_bad_bound_rejected(self):
        g = example_game("exa-1")
        with pytest.raises(ValueError):
            optimal_partition_bounded(g, 0)
        with pytest.raises(TypeError):
            optimal_partition_bounded(g, True)

    def test_bound_above_n_rejected(self):
        g = example_game("exa-1")
        with pytest.raises(ValueError, match="1..4"):
            optimal_partition_bounded(g, 10)

    def test_cap(self):
        g = Game.from_rule(BOUNDED_SOLVER_CAP + 1, lambda m: 0)
        with pytest.raises(CapExceededError):
            optimal_partition_bounded(g, 2)


class TestAllMaximizers:
    def test_two_way_tie_frozen(self):
        # the trap example has two welfare maximizers, both at 5: splitting
        # {3,4} into singletons costs nothing because values are additive there
        g = example_game("exa-miss")
        got = [str(p) for p in all_maximizers(g)]
        assert got == ["{1,2} {3,4}", "{1,2} {3} {4}"]

    def test_unique_maximizer(self):
        g = example_game("exa-miss1")
        assert all_maximizers(g) == [Partition.parse("{1,2} {3}")]

    @pytest.mark.parametrize("seed", range(8))
    def test_matches_enumeration(self, seed):
        n = 3 + seed % 3
        g = random_game(GeneratorSpec(n=n, kind="general", seed=200 + seed))
        best, _ = brute_force_optimum(g)
        expect = [q for q in enumerate_partitions(n) if social_welfare(g, q) == best]
        assert all_maximizers(g) == expect
        assert optimal_partition(g).optimum == best

    def test_returns_fresh_list(self):
        g = example_game("exa-1")
        first = all_maximizers(g)
        first.append(None)
        assert None not in all_maximizers(g)

    def test_cap(self):
        g = Game.from_rule(MAXIMIZER_CAP + 1, lambda m: 0)
        with pytest.raises(CapExceededError):
            all_maximizers(g)
