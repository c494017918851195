"""Tests for the skew product over the full shift and its pressure identity."""

import math

import pytest
from scipy.special import logsumexp

from src.semigroup.errors import BudgetExceededError, ConfigError
from src.semigroup.pressure import Schedule, partition_sum_separated
from src.semigroup.sets import Interval, discretize
from src.semigroup.skew import (
    BOUND_COLUMNS,
    SkewPoint,
    SkewPotential,
    measured_multiplicity,
    sensitive_indices,
    skew_apply,
    skew_birkhoff_sum,
    skew_bound_rows,
    skew_capacity_pressure,
    skew_distance,
    skew_orbit,
    skew_partition_sums,
    symbolic_multiplicity,
    verify_pressure_identity,
    window_radius,
)
from src.semigroup.skew import skew_product
from src.semigroup.systems import Constant, Zero
from src.semigroup.words import OmegaWindow, enumerate_words

pytestmark = pytest.mark.skew


@pytest.fixture(scope="module")
def eighths():
    return discretize(Interval(0.0, 1.0), 1 / 8)


def _decomposed_separated(system, g, cloud, n, epsilon, one_sided=False):
    """log(class count) + n c + log sum_w P_w, from the fibre sums alone."""
    fibre = g.fibre_system(system)
    words = enumerate_words(fibre.alphabet, n)
    logs = [math.log(partition_sum_separated(fibre, cloud, w, epsilon)) for w in words]
    return math.log(symbolic_multiplicity(system.m, epsilon, one_sided)) + n * g.c + float(logsumexp(logs))


@pytest.mark.parametrize("epsilon, expected", [(0.5, 1), (0.3, 1), (0.25, 2), (1 / 8, 3), (0.1, 3)])
def test_window_radius(epsilon, expected):
    assert window_radius(epsilon) == expected


@pytest.mark.parametrize("epsilon", [0.0, 0.6, -0.1])
def test_window_radius_rejects_scales(epsilon):
    with pytest.raises(ConfigError):
        window_radius(epsilon)


def test_symbolic_multiplicity():
    assert symbolic_multiplicity(2, 1 / 8) == 2**7
    assert symbolic_multiplicity(2, 1 / 8, one_sided=True) == 2**4
    assert symbolic_multiplicity(3, 0.5) == 27


class TestMeasuredMultiplicity:
    def test_sensitive_indices(self, slopes_2_3):
        assert sensitive_indices(slopes_2_3, 0.25) == (-2, -1, 0, 1, 2, 3)
        assert sensitive_indices(slopes_2_3, 0.25, one_sided=True) == (0, 1, 2, 3)

    @pytest.mark.parametrize("epsilon", [0.5, 0.3, 0.25, 1 / 8, 0.1, 1 / 32])
    @pytest.mark.parametrize("one_sided", [False, True])
    def test_matches_the_closed_form(self, slopes_2_3, epsilon, one_sided):
        measured = measured_multiplicity(slopes_2_3, epsilon, one_sided)

        assert measured == symbolic_multiplicity(2, epsilon, one_sided)

    def test_single_generator(self, doubling):
        assert measured_multiplicity(doubling, 0.25) == 1

    def test_rejects_scales(self, slopes_2_3):
        with pytest.raises(ConfigError):
            measured_multiplicity(slopes_2_3, 0.75)


class TestSkewMap:
    def test_apply_uses_the_zeroth_symbol(self, two_slopes):
        p = SkewPoint(OmegaWindow(-1, (1, 0, 1)), 0.3)
        first = skew_apply(two_slopes, p)
        second = skew_apply(two_slopes, first)

        assert first.x == pytest.approx(0.6)
        assert first.window.symbol(0) == 1
        assert second.x == pytest.approx(0.4)

    def test_exhausted_window(self, two_slopes):
        orbit = skew_orbit(two_slopes, SkewPoint(OmegaWindow(-1, (1, 0, 1)), 0.3), 2)

        assert len(orbit) == 3
        with pytest.raises(ConfigError):
            skew_apply(two_slopes, orbit[-1])

    def test_birkhoff_sum_adds_the_constant(self, two_slopes):
        g = SkewPotential(0.5, (Constant(0.1), Constant(0.3)))
        p = SkewPoint(OmegaWindow(0, (0, 1)), 0.2)

        assert skew_birkhoff_sum(two_slopes, g, p, 2) == pytest.approx(1.4)

    def test_distance_sees_the_shifted_window(self, two_slopes):
        p = SkewPoint(OmegaWindow(0, (0, 1, 0)), 0.3)
        q = SkewPoint(OmegaWindow(0, (0, 1, 1)), 0.3)

        assert skew_distance(two_slopes, p, q, 0, 3) == pytest.approx(0.25)
        assert skew_distance(two_slopes, p, q, 1, 3) == pytest.approx(0.5)

    def test_potential_to_dict(self):
        assert SkewPotential(0.7).to_dict() == {"c": 0.7, "phi": Zero().to_dict()}


class TestDirectSums:
    @pytest.mark.parametrize(
        "n, epsilon, one_sided",
        [(1, 0.25, False), (2, 0.5, False), (1, 0.25, True), (2, 0.25, True)],
    )
    def test_separated_sum_matches_the_fibre_decomposition(self, slopes_2_3, eighths, n, epsilon, one_sided):
        g = SkewPotential(0.4)
        log_separated, log_spanning = skew_partition_sums(slopes_2_3, g, eighths, n, epsilon, one_sided)

        expected = _decomposed_separated(slopes_2_3, g, eighths, n, epsilon, one_sided)
        assert log_separated == pytest.approx(expected, abs=1e-9)
        assert log_spanning <= log_separated + 1e-12

    def test_product_budget(self, slopes_2_3, eighths):
        with pytest.raises(BudgetExceededError):
            skew_partition_sums(slopes_2_3, SkewPotential(), eighths, 2, 0.25, budget=512)

    def test_bound_rows_hold(self, slopes_2_3, fine_grid):
        rows = skew_bound_rows(slopes_2_3, SkewPotential(0.7), fine_grid)

        # (n, eps) = (2, 0.25) needs 2**7 windows x 6 points and is skipped
        assert [(row.n, row.epsilon) for row in rows] == [(1, 0.5), (2, 0.5), (1, 0.25)]
        for row in rows:
            assert row.holds
            assert row.points == 6
            assert row.log_skew_separated >= row.log_lower_bound
            assert row.log_decomposed - row.log_lower_bound == pytest.approx(math.log(row.multiplicity))
            assert list(row.to_row()) == list(BOUND_COLUMNS)

    def test_a_wrong_class_count_breaks_the_rows(self, slopes_2_3, fine_grid, monkeypatch):
        monkeypatch.setattr(skew_product, "measured_multiplicity", lambda system, epsilon, one_sided=False: 1)
        rows = skew_bound_rows(slopes_2_3, SkewPotential(0.0), fine_grid, word_lengths=(1,), epsilons=(0.5,))

        assert len(rows) == 1
        assert not rows[0].decomposition_holds
        assert not rows[0].upper_holds
        assert rows[0].lower_holds

    def test_single_generator_rows(self, doubling, coarse_grid):
        rows = skew_bound_rows(doubling, SkewPotential(0.2), coarse_grid)

        assert rows
        assert all(row.holds and row.multiplicity == 1 for row in rows)


class TestPressureIdentity:
    @pytest.mark.slow
    def test_identity_with_a_constant(self, two_slopes, fine_grid, two_slopes_schedule):
        check = verify_pressure_identity(two_slopes, Zero(), 0.7, fine_grid, two_slopes_schedule)

        assert check.passed
        assert check.bounds_hold
        assert check.right == pytest.approx(math.log(2) + math.log(3) + 0.7, abs=0.05)
        assert abs(check.left - check.right) <= check.tol
        assert check.to_dict()["bounds_checked"] == 3

    @pytest.mark.slow
    def test_one_sided_sequences_share_the_pressure(self, two_slopes, fine_grid, two_slopes_schedule):
        g = SkewPotential(0.0)
        two_sided = skew_capacity_pressure(two_slopes, g, fine_grid, two_slopes_schedule)
        one_sided = skew_capacity_pressure(two_slopes, g, fine_grid, two_slopes_schedule, one_sided=True)

        assert one_sided.estimate.value == pytest.approx(two_sided.estimate.value, abs=1e-6)
        assert dict(two_sided.multiplicities) == {2.0**-4: 2**9, 2.0**-5: 2**11}
        assert dict(one_sided.multiplicities) == {2.0**-4: 2**5, 2.0**-5: 2**6}

    def test_single_generator_pressure(self, doubling, coarse_grid):
        skew = skew_capacity_pressure(doubling, SkewPotential(0.2), coarse_grid, Schedule((2, 3, 4), (1 / 8,)))

        assert skew.multiplicities == ((1 / 8, 1),)
        assert skew.estimate.value == pytest.approx(math.log(2) + 0.2, abs=1e-9)
