"""Tests for orbits, Birkhoff sums and Bowen distances along words."""

import math

import numpy as np
import pytest

from src.semigroup.dynamics import (
    birkhoff_sum,
    birkhoff_sums,
    bowen_distance,
    bowen_distance_matrix,
    in_bowen_ball,
    log_factor_sums,
    lyapunov_ball_radii,
    lyapunov_word,
    orbit_matrix,
    orbit_segment,
)
from src.semigroup.systems import Constant, geometric_system
from src.semigroup.words import Word

pytestmark = pytest.mark.dynamics


def test_orbit_applies_first_symbol_first(two_slopes):
    rows = orbit_matrix(two_slopes, Word.parse("01"), [0.3])

    assert rows[:, 0].tolist() == pytest.approx([0.3, 0.6, 0.4])
    assert orbit_segment(two_slopes, Word.parse("01"), 0.3).end == pytest.approx(0.4)


def test_birkhoff_sum_of_geometric_potential(two_slopes):
    system = geometric_system(two_slopes)

    assert birkhoff_sum(system, Word.parse("01"), 0.3) == pytest.approx(-math.log(8))
    sums = birkhoff_sums(system, Word.parse("11"), np.linspace(0, 1, 5, endpoint=False))
    assert sums == pytest.approx(np.full(5, -math.log(16)))


def test_constant_potential_sums_grow_linearly(doubling):
    system = doubling.with_potentials(Constant(0.25))

    assert birkhoff_sum(system, Word.parse("0000"), 0.123) == pytest.approx(1.0)


def test_log_factor_sums_ignore_potentials(two_slopes):
    system = two_slopes.with_potentials(Constant(5.0))

    assert log_factor_sums(system, Word.parse("010"), [0.7])[0] == pytest.approx(math.log(16))


def test_bowen_distance_takes_max_over_orbit(doubling):
    w = Word.parse("00")

    assert bowen_distance(doubling, w, 0.3, 0.31) == pytest.approx(0.04)
    assert in_bowen_ball(doubling, w, 0.3, 0.04 + 1e-12, 0.31)
    assert not in_bowen_ball(doubling, w, 0.3, 0.039, 0.31)


def test_bowen_distance_uses_circle_metric(doubling):
    # 0.99 and 0.01 are 0.02 apart on the circle
    assert bowen_distance(doubling, Word.parse("0"), 0.99, 0.01) == pytest.approx(0.04)


def test_distance_matrix_matches_pairwise_distances(two_slopes):
    w = Word.parse("10")
    points = [0.05, 0.3, 0.31, 0.8]
    matrix = bowen_distance_matrix(two_slopes, w, points)

    assert np.allclose(matrix, matrix.T)
    assert np.all(np.diag(matrix) == 0.0)
    for i, x in enumerate(points):
        for j, y in enumerate(points):
            assert matrix[i, j] == pytest.approx(bowen_distance(two_slopes, w, x, y))


def test_lyapunov_word(two_slopes):
    assert lyapunov_word(two_slopes, Word.parse("0101"), 0.2) == pytest.approx(1.5 * math.log(2))


def test_lyapunov_ball_radii(doubling):
    inner, outer = lyapunov_ball_radii(doubling, Word.parse("000"), 0.4, 0.1, 0.05)

    assert inner == pytest.approx(0.1 / 8 * math.exp(-0.15))
    assert outer == pytest.approx(0.1 / 8 * math.exp(0.15))
    # the Bowen ball of a linear map is exactly the base ball of radius delta / 2**n
    assert in_bowen_ball(doubling, Word.parse("000"), 0.4, 0.1, 0.4 + inner)
    assert not in_bowen_ball(doubling, Word.parse("000"), 0.4, 0.1, 0.4 + outer)
