"""Tests for the Caratheodory pressure from weighted Bowen-ball covers."""

import math

import pytest

from src.semigroup.errors import ConfigError, Flag
from src.semigroup.pressure import Schedule, caratheodory_pressure

pytestmark = pytest.mark.pressure


@pytest.fixture(scope="module")
def doubling_cover_schedule():
    return Schedule((3, 4, 5, 6), (1 / 8,))


@pytest.mark.slow
def test_doubling_critical_value_is_near_log_two(doubling, medium_grid, doubling_cover_schedule):
    estimate = caratheodory_pressure(doubling, medium_grid, doubling_cover_schedule)

    assert estimate.value == pytest.approx(math.log(2), abs=0.05)
    assert estimate.lower <= estimate.value <= estimate.upper
    assert estimate.upper - estimate.lower <= 1e-3
    assert Flag.UNRESOLVED not in estimate.flags
    assert [cell.n for cell in estimate.per_cell] == [3, 6]
    assert estimate.diagnostics["weighting"] == "center"
    assert estimate.diagnostics["epsilon"] == 1 / 8


@pytest.mark.slow
def test_ball_sup_weighting_shares_the_critical_value(doubling, medium_grid, doubling_cover_schedule):
    center = caratheodory_pressure(doubling, medium_grid, doubling_cover_schedule)
    ball_sup = caratheodory_pressure(doubling, medium_grid, doubling_cover_schedule, weighting="ball_sup")

    # with the zero potential every ball cost carries the same extra factor
    assert ball_sup.value == pytest.approx(center.value, abs=0.01)


@pytest.mark.slow
def test_constant_potential_shifts_the_critical_value(doubling, medium_grid, doubling_cover_schedule):
    base = caratheodory_pressure(doubling, medium_grid, doubling_cover_schedule)
    shifted = caratheodory_pressure(doubling.shifted(0.5), medium_grid, doubling_cover_schedule)

    assert shifted.value - base.value == pytest.approx(0.5, abs=0.01)


def test_unit_crossing_is_a_separate_diagnostic(doubling, coarse_grid):
    estimate = caratheodory_pressure(doubling, coarse_grid, Schedule((2, 3, 4), (1 / 8,)), extension=0)
    crossing = estimate.diagnostics["unit_crossing"]

    assert "unit_crossing" in estimate.diagnostics
    # log M'(N, alpha) ~ N (P - alpha) + log(cover constant), so M'(N_max) = 1 lies right of P
    assert crossing is None or crossing > estimate.value


def test_trace_is_sorted_and_recorded(doubling, coarse_grid):
    estimate = caratheodory_pressure(doubling, coarse_grid, Schedule((2, 3, 4), (1 / 8,)), extension=0)
    alphas = [row[0] for row in estimate.diagnostics["trace"]]

    assert alphas == sorted(alphas)
    assert len(alphas) >= 3


@pytest.mark.parametrize(
    "kwargs",
    [
        {"weighting": "corner"},
        {"extension": -1},
    ],
)
def test_invalid_options(doubling, coarse_grid, kwargs):
    with pytest.raises(ConfigError):
        caratheodory_pressure(doubling, coarse_grid, Schedule((2, 3), (1 / 8,)), **kwargs)


def test_needs_two_word_lengths(doubling, coarse_grid):
    with pytest.raises(ConfigError):
        caratheodory_pressure(doubling, coarse_grid, Schedule((3,), (1 / 8,)))
