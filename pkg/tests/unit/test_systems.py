"""Tests for conformal maps, potentials and semigroup systems."""

import math

import numpy as np
import pytest

from src.semigroup.errors import ConfigError
from src.semigroup.systems import (
    Constant,
    LinearMod1,
    MannevillePomeau,
    MetricMode,
    PiecewiseLinearFull,
    ScaledLogFactor,
    SemigroupSystem,
    Zero,
    certify_family,
    geometric_system,
    potential_sup_distance,
)

pytestmark = pytest.mark.systems


class TestMaps:
    def test_linear_map_reduces_mod_one(self):
        f = LinearMod1(2)

        assert f.apply(0.75) == pytest.approx(0.5)
        assert f.factor(0.3) == 2.0
        assert f.apply(np.array([0.1, 0.6])).tolist() == pytest.approx([0.2, 0.2])

    def test_manneville_pomeau_is_indifferent_at_zero(self):
        f = MannevillePomeau(0.5)

        assert f.apply(0.0) == 0.0
        assert f.factor(0.0) == 1.0
        assert f.apply(0.25) == pytest.approx(0.375)
        assert f.factor(0.25) == pytest.approx(1.0 + 1.5 * 0.5)

    def test_piecewise_linear_branches(self):
        f = PiecewiseLinearFull((3.0, 1.5))

        assert f.cuts == pytest.approx((0.0, 1.0 / 3.0))
        assert f.apply(np.array([0.1, 0.5])).tolist() == pytest.approx([0.3, 0.25])
        assert f.factor(np.array([0.1, 0.5])).tolist() == pytest.approx([3.0, 1.5])

    @pytest.mark.parametrize(
        "build",
        [
            lambda: LinearMod1(1),
            lambda: LinearMod1(2.5),
            lambda: MannevillePomeau(1.0),
            lambda: PiecewiseLinearFull((2.0, 3.0)),
            lambda: PiecewiseLinearFull((2.0,)),
        ],
    )
    def test_invalid_parameters_raise_config_error(self, build):
        with pytest.raises(ConfigError):
            build()


class TestSemigroupSystem:
    def test_single_potential_is_repeated(self, two_slopes):
        system = two_slopes.with_potentials(Constant(0.3))

        assert system.potentials == (Constant(0.3), Constant(0.3))
        assert system.m == 2

    def test_shift_adds_constant_to_every_potential(self, two_slopes):
        shifted = two_slopes.shifted(0.7)

        assert shifted.potential_value(0, 0.4) == pytest.approx(0.7)
        assert shifted.potential_value(1, 0.4) == pytest.approx(0.7)

    def test_geometric_potential(self, two_slopes):
        system = geometric_system(two_slopes, 0.5)

        assert system.potential_value(1, 0.2) == pytest.approx(-0.5 * math.log(4))

    def test_metrics(self):
        circle = SemigroupSystem.create([LinearMod1(2)])
        interval = SemigroupSystem.create([LinearMod1(2)], metric_mode=MetricMode.INTERVAL)

        assert circle.distance(0.1, 0.9) == pytest.approx(0.2)
        assert interval.distance(0.1, 0.9) == pytest.approx(0.8)

    def test_symbol_out_of_range(self, doubling):
        with pytest.raises(ConfigError):
            doubling.apply_generator(1, 0.2)

    def test_potential_count_must_match(self):
        with pytest.raises(ConfigError):
            SemigroupSystem.create([LinearMod1(2), LinearMod1(3)], [Zero()])

    def test_log_factor_bounds(self, two_slopes, manneville_pomeau):
        assert two_slopes.log_factor_bounds() == pytest.approx((math.log(2), math.log(4)))
        assert two_slopes.max_log_factor() == pytest.approx(math.log(4))
        low, _ = manneville_pomeau.log_factor_bounds()
        assert low == 0.0
        assert manneville_pomeau.max_log_factor() == pytest.approx(math.log(2.5))

    def test_potential_modulus(self, two_slopes, manneville_pomeau):
        assert two_slopes.potential_modulus(0.1) == 0.0
        assert geometric_system(two_slopes).potential_modulus(0.1) == pytest.approx(0.0)
        assert geometric_system(manneville_pomeau).potential_modulus(0.1) > 0.0

    def test_dict_round_trip(self, two_slopes):
        system = two_slopes.with_potentials([ScaledLogFactor(-1.0, 0.5), Constant(2.0)])

        assert SemigroupSystem.from_dict(system.to_dict()) == system


class TestPotentialDistance:
    def test_constants_are_exact(self, two_slopes):
        distance = potential_sup_distance(
            two_slopes, (Constant(0.1), Constant(0.4)), (Zero(), Constant(1.0))
        )

        assert distance == pytest.approx(0.6)

    def test_offsets_of_the_same_log_factor(self, two_slopes):
        phi = (ScaledLogFactor(-0.5, 0.2), ScaledLogFactor(-0.5, -0.1))
        psi = (ScaledLogFactor(-0.5, 0.0), ScaledLogFactor(-0.5, 0.3))

        assert potential_sup_distance(two_slopes, phi, psi) == pytest.approx(0.4)

    def test_length_mismatch(self, two_slopes):
        with pytest.raises(ConfigError):
            potential_sup_distance(two_slopes, (Zero(),), (Zero(), Zero()))


def test_family_certificates(two_slopes, manneville_pomeau):
    linear = certify_family(two_slopes)
    assert linear.a_interval == pytest.approx((math.log(2), math.log(4)))
    assert linear.b_is_whole_space

    indifferent = certify_family(manneville_pomeau)
    assert indifferent.a_interval is None
    assert indifferent.exceptional_points == (0.0,)
    assert indifferent.b_is_whole_space
