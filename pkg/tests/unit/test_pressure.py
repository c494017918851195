"""Tests for partition sums, capacity pressure and entropy."""

import math

import pytest

from src.semigroup.errors import ConfigError, Flag, UnresolvedError
from src.semigroup.pressure import (
    Schedule,
    averaged_partition,
    capacity_pressure,
    cell_resolved,
    entropy,
    partition_sum_separated,
    partition_sum_spanning,
    spanning_separated_sandwich,
)
from src.semigroup.sets import Interval, discretize
from src.semigroup.systems import Constant, LinearMod1, SemigroupSystem, geometric_system
from src.semigroup.words import Word

pytestmark = pytest.mark.pressure

LOG2 = math.log(2.0)


class TestSchedule:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"word_lengths": (), "epsilons": (0.1,)},
            {"word_lengths": (3, 2), "epsilons": (0.1,)},
            {"word_lengths": (1, 2), "epsilons": (0.1,)},
            {"word_lengths": (2, 3), "epsilons": (0.1, 0.2)},
            {"word_lengths": (2, 3), "epsilons": (0.0,)},
            {"word_lengths": (2, 3), "epsilons": (0.1,), "mc_samples": 1},
        ],
    )
    def test_invalid_schedules(self, kwargs):
        with pytest.raises(ConfigError):
            Schedule(**kwargs)

    def test_seed_requirement(self):
        schedule = Schedule((2, 3, 12), (0.1,))

        assert schedule.exhaustive(2, 12)
        assert schedule.needs_seed(3)
        with pytest.raises(ConfigError):
            schedule.require_seed()


class TestPartitionSums:
    def test_separated_count_on_dyadic_grid(self, doubling, coarse_grid):
        # 2**n / epsilon points of spacing epsilon / 2**n
        assert partition_sum_separated(doubling, coarse_grid, Word.parse("000"), 1 / 8) == pytest.approx(64)

    def test_weights_follow_the_potential(self, doubling, coarse_grid):
        system = geometric_system(doubling)

        assert partition_sum_separated(system, coarse_grid, Word.parse("000"), 1 / 8) == pytest.approx(8)

    def test_spanning_never_exceeds_separated(self, two_slopes, coarse_grid):
        w = Word.parse("011")
        assert partition_sum_spanning(two_slopes, coarse_grid, w, 1 / 16) <= partition_sum_separated(
            two_slopes, coarse_grid, w, 1 / 16
        )

    def test_sandwich_holds_cell_by_cell(self, slopes_2_3, coarse_grid):
        system = geometric_system(slopes_2_3, 0.5)
        for symbols in ("01", "10", "110"):
            cell = spanning_separated_sandwich(system, coarse_grid, Word.parse(symbols), 1 / 16)
            assert cell.lower_holds
            assert cell.upper_holds

    def test_word_average_is_exact_when_exhaustive(self, two_slopes, coarse_grid):
        schedule = Schedule((2, 3), (1 / 16,))
        average = averaged_partition(two_slopes, coarse_grid, 2, 1 / 16, schedule)
        expected = sum(
            partition_sum_separated(two_slopes, coarse_grid, Word(w), 1 / 16)
            for w in ((0, 0), (0, 1), (1, 0), (1, 1))
        ) / 4

        assert average.mode == "exhaustive"
        assert average.n_words == 4
        assert average.stderr == 0.0
        assert math.exp(average.log_value) == pytest.approx(expected)

    def test_sampled_average_reports_stderr(self, two_slopes, coarse_grid):
        schedule = Schedule((2, 3), (1 / 16,), word_budget=2, mc_samples=8, seed=5)
        average = averaged_partition(two_slopes, coarse_grid, 3, 1 / 16, schedule)

        assert average.mode == "monte_carlo"
        assert average.n_words == 8
        assert average.stderr >= 0.0

    def test_cell_resolution(self, doubling, coarse_grid):
        assert cell_resolved(doubling, coarse_grid, 6, 1 / 8)
        assert not cell_resolved(doubling, coarse_grid, 8, 1 / 8)


class TestCapacityPressure:
    def test_doubling_entropy_is_log_two(self, doubling, fine_grid, doubling_schedule):
        estimate = entropy(doubling, fine_grid, doubling_schedule)

        assert estimate.value == pytest.approx(LOG2, abs=1e-9)
        assert estimate.lower == pytest.approx(LOG2, abs=1e-9)
        assert estimate.upper == pytest.approx(LOG2, abs=1e-9)
        assert estimate.flags == frozenset()
        assert estimate.diagnostics["epsilon"] == 2.0**-4

    @pytest.mark.parametrize("t", [0.0, 0.5, 1.0, 1.5])
    def test_doubling_geometric_pressure(self, doubling, fine_grid, doubling_schedule, t):
        estimate = capacity_pressure(geometric_system(doubling, t), fine_grid, doubling_schedule)

        assert estimate.value == pytest.approx((1 - t) * LOG2, abs=1e-9)

    def test_two_slopes_closed_form(self, two_slopes, fine_grid, two_slopes_schedule):
        for t in (0.0, 0.5, 1.0):
            value = capacity_pressure(geometric_system(two_slopes, t), fine_grid, two_slopes_schedule).value
            expected = math.log((2.0 ** (1 - t) + 4.0 ** (1 - t)) / 2)
            assert value == pytest.approx(expected, abs=0.05)

    def test_spanning_variant_agrees(self, two_slopes, medium_grid):
        schedule = Schedule((2, 3, 4), (1 / 16,))
        separated = capacity_pressure(two_slopes, medium_grid, schedule).value
        spanning = capacity_pressure(two_slopes, medium_grid, schedule, variant="spanning").value

        assert spanning == pytest.approx(separated, abs=0.1)

    def test_constant_shift(self, two_slopes, fine_grid, two_slopes_schedule):
        base = capacity_pressure(two_slopes, fine_grid, two_slopes_schedule).value
        shifted = capacity_pressure(two_slopes.shifted(0.7), fine_grid, two_slopes_schedule).value

        assert shifted - base == pytest.approx(0.7, abs=1e-9)

    def test_duplicate_generator_is_invisible(self, doubling, coarse_grid):
        duplicate = SemigroupSystem.create([LinearMod1(2), LinearMod1(2)])
        schedule = Schedule((3, 4, 5), (1 / 8,))

        single = capacity_pressure(doubling, coarse_grid, schedule).value
        double = capacity_pressure(duplicate, coarse_grid, schedule).value
        assert double == pytest.approx(single, abs=1e-9)

    def test_cantor_entropy(self, tripling_interval, cantor_cloud, cantor_schedule):
        assert entropy(tripling_interval, cantor_cloud, cantor_schedule).value == pytest.approx(LOG2, abs=0.05)

    def test_unresolved_cloud_raises_with_partial_cells(self, doubling):
        cloud = discretize(Interval(0.0, 1.0), 2.0**-6)
        schedule = Schedule((6, 7, 8), (1 / 8,))

        with pytest.raises(UnresolvedError) as info:
            capacity_pressure(doubling, cloud, schedule)
        assert info.value.flag is Flag.UNRESOLVED
        assert len(info.value.partial.per_cell) == 3

    def test_coarser_resolved_scale_is_used(self, doubling, coarse_grid):
        schedule = Schedule((3, 4, 5), (1 / 8, 1 / 64))
        estimate = capacity_pressure(doubling, coarse_grid, schedule)

        assert Flag.UNRESOLVED in estimate.flags
        assert estimate.diagnostics["epsilon"] == 1 / 8
        assert estimate.value == pytest.approx(LOG2, abs=1e-9)

    def test_sampled_reruns_are_identical(self, two_slopes, fine_grid):
        schedule = Schedule((2, 3, 4, 5), (1 / 16, 1 / 32), word_budget=8, mc_samples=16, seed=9)
        system = two_slopes.with_potentials(Constant(0.0))

        first = capacity_pressure(system, fine_grid, schedule)
        second = capacity_pressure(system, fine_grid, schedule, threads=4)
        assert first.per_cell == second.per_cell
        assert Flag.MONTE_CARLO in first.flags

    def test_needs_three_word_lengths(self, doubling, fine_grid):
        with pytest.raises(ConfigError):
            capacity_pressure(doubling, fine_grid, Schedule((6, 7), (1 / 8,)))

    def test_unknown_variant(self, doubling, fine_grid, doubling_schedule):
        with pytest.raises(ConfigError):
            capacity_pressure(doubling, fine_grid, doubling_schedule, variant="packing")
