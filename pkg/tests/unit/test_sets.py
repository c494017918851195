"""Tests for clouds, Bowen neighbourhoods and separated/spanning selection."""

import math

import numpy as np
import pytest

from src.semigroup.bowen import box_counts
from src.semigroup.dynamics import bowen_distance_matrix, orbit_matrix
from src.semigroup.errors import BudgetExceededError, ConfigError
from src.semigroup.sets import (
    ArcNeighbourhoods,
    CantorSymbolic,
    DenseNeighbourhoods,
    Interval,
    PointList,
    SampleCloud,
    bowen_neighbourhoods,
    discretize,
    greedy_spanning,
    maximal_separated,
    region_from_dict,
)
from src.semigroup.systems import geometric_system
from src.semigroup.words import Word

pytestmark = pytest.mark.sets


class TestDiscretize:
    def test_interval_grid(self, coarse_grid):
        assert len(coarse_grid) == 1024
        assert coarse_grid.resolution == 2.0**-10
        assert coarse_grid.points[1] - coarse_grid.points[0] == 2.0**-10

    def test_cantor_cloud_midpoints(self, cantor_cloud):
        assert len(cantor_cloud) == 2**10
        assert cantor_cloud.resolution == pytest.approx(3.0**-10 / 2)
        counts = box_counts(cantor_cloud.points, [3.0**-k for k in range(1, 6)])
        assert counts == [2**k for k in range(1, 6)]

    def test_cantor_resolution_cannot_be_refined(self):
        with pytest.raises(ConfigError):
            discretize(CantorSymbolic.uniform(3, (0, 2), 3), 1e-4)

    def test_interval_needs_resolution(self):
        with pytest.raises(ConfigError):
            discretize(Interval(0.0, 0.5))

    def test_budget(self):
        with pytest.raises(BudgetExceededError):
            discretize(Interval(0.0, 1.0), 2.0**-16, budget=1000)

    def test_point_list(self):
        cloud = discretize(PointList((0.7, 0.1, 0.4)), 0.01)

        assert cloud.points.tolist() == [0.7, 0.1, 0.4]
        assert cloud.sorted_points.tolist() == [0.1, 0.4, 0.7]
        with pytest.raises(ConfigError):
            PointList((1.2,))

    def test_region_from_dict(self):
        region = region_from_dict({"kind": "cantor", "base_slopes": [3, 3, 3], "allowed": [2, 0], "depth": 4})

        assert region == CantorSymbolic.uniform(3, (0, 2), 4)
        with pytest.raises(ConfigError):
            region_from_dict({"kind": "disc"})


class TestSampleCloud:
    def test_points_are_read_only(self, coarse_grid):
        with pytest.raises(ValueError):
            coarse_grid.points[0] = 0.5

    def test_cloud_id_depends_on_points(self):
        a = SampleCloud(np.array([0.1, 0.2]), 0.1)
        b = SampleCloud(np.array([0.1, 0.2]), 0.1)
        c = SampleCloud(np.array([0.1, 0.3]), 0.1)

        assert a.cloud_id == b.cloud_id
        assert a.cloud_id != c.cloud_id

    def test_union_and_subset(self):
        left = discretize(Interval(0.0, 0.5), 0.125)
        right = discretize(Interval(0.5, 1.0), 0.25)
        both = left.union(right)

        assert len(both) == 6
        assert both.resolution == 0.25
        assert both.subset([0, 5]).points.tolist() == [0.0, 0.75]


class TestNeighbourhoods:
    def test_arc_extents_on_dyadic_grid(self, doubling, coarse_grid):
        # d_w(x, y) = 8 |x - y| for |w| = 3 and small gaps
        open_balls = bowen_neighbourhoods(doubling, Word.parse("000"), coarse_grid, 1 / 8)
        closed_balls = bowen_neighbourhoods(doubling, Word.parse("000"), coarse_grid, 1 / 8, closed=True)

        assert isinstance(open_balls, ArcNeighbourhoods)
        assert set(open_balls.sizes().tolist()) == {31}
        assert set(closed_balls.sizes().tolist()) == {33}

    def test_arcs_wrap_around_the_circle(self, doubling, coarse_grid):
        balls = bowen_neighbourhoods(doubling, Word.parse("000"), coarse_grid, 1 / 8)
        members = set(balls.members(0).tolist())

        assert {1023, 1009, 0, 15} <= members
        assert 1008 not in members and 16 not in members

    def test_dense_fallback_for_coarse_scales(self, doubling, coarse_grid):
        balls = bowen_neighbourhoods(doubling, Word.parse("00"), coarse_grid, 0.3)

        assert isinstance(balls, DenseNeighbourhoods)

    def test_dense_fallback_has_a_size_limit(self, doubling, fine_grid):
        with pytest.raises(BudgetExceededError):
            bowen_neighbourhoods(doubling, Word.parse("00"), fine_grid, 0.3)

    def test_arc_members_match_brute_force(self, two_slopes):
        cloud = discretize(Interval(0.0, 1.0), 2.0**-8)
        w = Word.parse("10")
        balls = bowen_neighbourhoods(two_slopes, w, cloud, 0.1)
        distances = bowen_distance_matrix(two_slopes, w, cloud.sorted_points)

        for i in (0, 17, 128, 255):
            assert sorted(balls.members(i).tolist()) == sorted(np.flatnonzero(distances[i] < 0.1).tolist())

    def test_range_max_matches_members(self, two_slopes):
        cloud = discretize(Interval(0.0, 1.0), 2.0**-8)
        w = Word.parse("01")
        balls = bowen_neighbourhoods(two_slopes, w, cloud, 0.1, closed=True)
        values = np.sin(np.arange(len(cloud)) * 1.7)
        result = balls.range_max(values)

        for i in range(len(cloud)):
            assert result[i] == values[balls.members(i)].max()


class TestSelections:
    def test_separated_set_on_dyadic_grid(self, doubling, coarse_grid):
        chosen = maximal_separated(doubling, Word.parse("000"), coarse_grid, 1 / 8)

        assert len(chosen) == 64
        distances = bowen_distance_matrix(doubling, Word.parse("000"), coarse_grid.points[chosen])
        off_diagonal = distances[~np.eye(len(chosen), dtype=bool)]
        assert off_diagonal.min() >= 1 / 8

    def test_spanning_set_covers_cloud(self, two_slopes, coarse_grid):
        w = Word.parse("01")
        epsilon = 1 / 16
        chosen = greedy_spanning(two_slopes, w, coarse_grid, epsilon)
        orbit_all = orbit_matrix(two_slopes, w, coarse_grid.points)
        orbit_chosen = orbit_matrix(two_slopes, w, coarse_grid.points[chosen])

        gaps = np.max(
            two_slopes.distance(orbit_all[:, :, None], orbit_chosen[:, None, :]), axis=0
        ).min(axis=1)
        assert gaps.max() < epsilon
        separated = maximal_separated(two_slopes, w, coarse_grid, epsilon)
        assert len(chosen) <= len(separated)
        assert len(chosen) >= math.ceil(len(coarse_grid) / 127)

    def test_separated_set_prefers_large_birkhoff_sums(self, manneville_pomeau, coarse_grid):
        system = geometric_system(manneville_pomeau, -1.0)
        chosen = maximal_separated(system, Word.parse("0"), coarse_grid, 0.05)

        # the first accepted point carries the largest log-factor
        factors = np.log(manneville_pomeau.factor(0, coarse_grid.points))
        assert factors[chosen[0]] == factors.max()
