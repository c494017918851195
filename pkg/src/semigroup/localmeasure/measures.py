"""
Reference measures and the mass they give to Bowen balls.

Lebesgue masses are Monte-Carlo estimates: the ends of the ball are located by
bisection, then stratified uniform samples over a slightly enlarged window
count the fraction inside. Empirical and Bernoulli masses are exact.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any, NamedTuple

import numpy as np

from src.semigroup.dynamics import orbit_matrix
from src.semigroup.errors import ConfigError
from src.semigroup.numerics_config import (
    MAX_BISECTION_STEPS,
    MAX_SAMPLE_BUDGET,
    MIN_SAMPLE_BUDGET,
    TARGET_HITS,
    WINDOW_ENLARGEMENT,
)
from src.semigroup.parallel import philox_generator
from src.semigroup.sets.neighborhoods import arcs_apply
from src.semigroup.systems import MetricMode, SemigroupSystem
from src.semigroup.words import Word

logger = logging.getLogger(__name__)

MEASURE_KINDS = ("lebesgue", "empirical", "bernoulli")


class MassEstimate(NamedTuple):
    mass: float
    stderr: float
    zero_mass: bool
    samples: int = 0


@dataclass(frozen=True)
class MeasureModel:
    """A Borel probability measure on [0, 1)."""

    kind: str
    atoms: tuple[float, ...] = ()
    weights: tuple[float, ...] = ()
    base_slopes: tuple[float, ...] = ()
    sample_budget: int = MIN_SAMPLE_BUDGET
    seed: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "atoms", tuple(float(a) for a in self.atoms))
        object.__setattr__(self, "weights", tuple(float(p) for p in self.weights))
        object.__setattr__(self, "base_slopes", tuple(float(a) for a in self.base_slopes))
        if self.kind not in MEASURE_KINDS:
            raise ConfigError(f"unknown measure kind {self.kind!r}", "commands.local_pressure.measure.kind")
        if self.sample_budget < MIN_SAMPLE_BUDGET:
            raise ConfigError(
                f"sample budget must be at least {MIN_SAMPLE_BUDGET}",
                "commands.local_pressure.measure.sample_budget",
            )
        if self.kind == "empirical" and not self.atoms:
            raise ConfigError("an empirical measure needs atoms", "commands.local_pressure.measure.atoms")
        if self.kind == "bernoulli":
            if len(self.weights) != len(self.base_slopes) or len(self.weights) < 2:
                raise ConfigError(
                    "a Bernoulli measure needs one weight per branch of the base map",
                    "commands.local_pressure.measure.weights",
                )
            if any(p < 0 for p in self.weights) or not math.isclose(sum(self.weights), 1.0, abs_tol=1e-9):
                raise ConfigError("weights must be a probability vector", "commands.local_pressure.measure.weights")
            if not math.isclose(sum(1.0 / a for a in self.base_slopes), 1.0, abs_tol=1e-9):
                raise ConfigError("base branch lengths must sum to 1", "commands.local_pressure.measure.base_slopes")

    @classmethod
    def lebesgue(cls, seed: int | None, sample_budget: int = MIN_SAMPLE_BUDGET) -> MeasureModel:
        return cls("lebesgue", sample_budget=sample_budget, seed=seed)

    @classmethod
    def empirical(cls, atoms: Sequence[float]) -> MeasureModel:
        return cls("empirical", atoms=tuple(atoms))

    @classmethod
    def bernoulli(cls, weights: Sequence[float], base_slopes: Sequence[float]) -> MeasureModel:
        """Self-similar measure giving branch j of the base map the weight p_j at every level."""
        return cls("bernoulli", weights=tuple(weights), base_slopes=tuple(base_slopes))

    @property
    def needs_seed(self) -> bool:
        return self.kind == "lebesgue"

    def cdf(self, y: Any) -> np.ndarray:
        """Distribution function of the Bernoulli measure, exact to double precision."""
        if self.kind != "bernoulli":
            raise ConfigError(f"no closed-form distribution function for {self.kind} measures")
        slopes = np.asarray(self.base_slopes)
        weights = np.asarray(self.weights)
        starts = np.concatenate(([0.0], np.cumsum(1.0 / slopes)[:-1]))
        below = np.concatenate(([0.0], np.cumsum(weights)[:-1]))
        shape = np.shape(y)
        y = np.clip(np.asarray(y, dtype=float).reshape(-1), 0.0, 1.0)
        total = np.zeros_like(y)
        scale = np.ones_like(y)
        # F(y) = below_j + p_j F(T_j y) on branch j; stop once the remainder is negligible
        for _ in range(64):
            branch = np.clip(np.searchsorted(starts, y, side="right") - 1, 0, slopes.size - 1)
            total += scale * below[branch]
            scale = scale * weights[branch]
            y = np.clip((y - starts[branch]) * slopes[branch], 0.0, 1.0)
            if float(scale.max()) < 1e-17:
                break
        return total.reshape(shape)

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {"kind": self.kind}
        if self.kind == "empirical":
            data["atoms"] = list(self.atoms)
        if self.kind == "bernoulli":
            data["weights"] = list(self.weights)
            data["base_slopes"] = list(self.base_slopes)
        if self.kind == "lebesgue":
            data["sample_budget"] = self.sample_budget
        return data


def measure_from_dict(data: dict[str, Any], seed: int | None = None) -> MeasureModel:
    kind = data.get("kind", "lebesgue")
    if kind == "lebesgue":
        return MeasureModel.lebesgue(seed, int(data.get("sample_budget", MIN_SAMPLE_BUDGET)))
    if kind == "empirical":
        return MeasureModel.empirical(data.get("atoms", ()))
    if kind == "bernoulli":
        return MeasureModel.bernoulli(data.get("weights", ()), data.get("base_slopes", ()))
    raise ConfigError(f"unknown measure kind {kind!r}", "commands.local_pressure.measure.kind")


def _ball_distances(system: SemigroupSystem, w: Word, x: float, ys: np.ndarray) -> np.ndarray:
    orbit_x = orbit_matrix(system, w, [x])
    orbit_y = orbit_matrix(system, w, ys)
    return np.max(system.distance(orbit_x, orbit_y), axis=0)


def ball_arc(system: SemigroupSystem, w: Word, x: float, r: float) -> tuple[float, float]:
    """
    Lengths (left, right) of the arc B_w(x, r) on each side of x.

    Only meaningful when Bowen balls at radius r are arcs.
    """
    if system.metric_mode is MetricMode.CIRCLE:
        caps = np.array([r, r])
    else:
        caps = np.array([min(r, x), min(r, math.nextafter(1.0, 0.0) - x)])
    signs = np.array([-1.0, 1.0])

    def inside(offsets: np.ndarray) -> np.ndarray:
        ys = np.mod(x + signs * offsets, 1.0)
        return _ball_distances(system, w, x, ys) <= r

    lo = np.zeros(2)
    hi = caps.copy()
    done = inside(hi)
    lo[done] = hi[done]
    for _ in range(MAX_BISECTION_STEPS):
        if np.all(done | (hi - lo <= 1e-16 * max(r, 1e-300))):
            break
        mid = 0.5 * (lo + hi)
        ok = inside(mid)
        lo = np.where(~done & ok, mid, lo)
        hi = np.where(~done & ~ok, mid, hi)
    return float(lo[0]), float(lo[1])


def bowen_ball_mass(measure: MeasureModel, system: SemigroupSystem, w: Word, x: float, r: float) -> MassEstimate:
    """
    mu(B_w(x, r)) for the closed Bowen ball.

    Raises:
        ConfigError: For r <= 0, a Lebesgue measure without seed, or a Bernoulli
            measure outside the arc regime
    """
    if not r > 0:
        raise ConfigError(f"radius must be positive, got {r}", "commands.local_pressure.radii")
    if measure.kind == "empirical":
        atoms = np.asarray(measure.atoms)
        mass = float(np.mean(_ball_distances(system, w, x, atoms) <= r))
        return MassEstimate(mass, 0.0, mass == 0.0, atoms.size)
    if measure.kind == "bernoulli":
        if not arcs_apply(system, r):
            raise ConfigError(f"radius {r} is outside the arc regime needed for exact Bernoulli masses")
        left, right = ball_arc(system, w, x, r)
        a, b = x - left, x + right
        if a < 0:
            mass = float(measure.cdf(b) + 1.0 - measure.cdf(a + 1.0))
        elif b >= 1.0:
            mass = float(1.0 - measure.cdf(a) + measure.cdf(b - 1.0))
        else:
            mass = float(measure.cdf(b) - measure.cdf(a))
        mass = max(mass, 0.0)
        return MassEstimate(mass, 0.0, mass == 0.0, 0)
    return _lebesgue_mass(measure, system, w, x, r)


def _lebesgue_mass(measure: MeasureModel, system: SemigroupSystem, w: Word, x: float, r: float) -> MassEstimate:
    if measure.seed is None:
        raise ConfigError("a seed is required for Lebesgue ball masses", "schedule.seed")
    rng = philox_generator(measure.seed, "mass", str(w), repr(float(x)), repr(float(r)))
    if arcs_apply(system, r):
        left, right = ball_arc(system, w, x, r)
        start = x - WINDOW_ENLARGEMENT * left
        width = WINDOW_ENLARGEMENT * (left + right)
        if system.metric_mode is MetricMode.INTERVAL:
            start = max(start, 0.0)
            width = min(x + WINDOW_ENLARGEMENT * right, 1.0) - start
        count = measure.sample_budget
    else:
        start, width = 0.0, 1.0
        guess = 2.0 * r * math.exp(-len(w) * system.max_log_factor())
        count = int(min(MAX_SAMPLE_BUDGET, max(measure.sample_budget, TARGET_HITS / max(guess, 1e-300))))
    if width <= 0:
        return MassEstimate(0.0, 0.0, True, 0)
    # one uniform draw per stratum
    ys = start + width * (np.arange(count) + rng.random(count)) / count
    if system.metric_mode is MetricMode.CIRCLE:
        ys = np.mod(ys, 1.0)
    hits = _ball_distances(system, w, x, ys) <= r
    fraction = float(np.mean(hits))
    stderr = width * math.sqrt(fraction * (1.0 - fraction) / count)
    return MassEstimate(width * fraction, stderr, not hits.any(), count)
