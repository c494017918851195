"""
The pair (G, Phi): m conformal generators with one potential each.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, replace
from typing import Any, NamedTuple

import numpy as np

from src.semigroup.errors import ConfigError
from src.semigroup.numerics_config import SUP_GRID_SIZE
from src.semigroup.systems.maps import (
    ConformalMap,
    LinearMod1,
    MannevillePomeau,
    MetricMode,
    PiecewiseLinearFull,
    base_distance,
    map_from_dict,
)
from src.semigroup.systems.potentials import (
    Constant,
    Potential,
    ScaledLogFactor,
    Zero,
    potential_from_dict,
)
from src.semigroup.words import Alphabet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SemigroupSystem:
    maps: tuple[ConformalMap, ...]
    potentials: tuple[Potential, ...]
    metric_mode: MetricMode = MetricMode.CIRCLE

    def __post_init__(self) -> None:
        object.__setattr__(self, "maps", tuple(self.maps))
        object.__setattr__(self, "potentials", tuple(self.potentials))
        object.__setattr__(self, "metric_mode", MetricMode(self.metric_mode))
        if not self.maps:
            raise ConfigError("a system needs at least one generator", "system.maps")
        if len(self.maps) != len(self.potentials):
            raise ConfigError(
                f"{len(self.maps)} maps but {len(self.potentials)} potentials", "potential"
            )
        Alphabet(len(self.maps))

    @classmethod
    def create(
        cls,
        maps: Sequence[ConformalMap],
        potential: Potential | Sequence[Potential] | None = None,
        metric_mode: MetricMode | str = MetricMode.CIRCLE,
    ) -> SemigroupSystem:
        """Build a system, repeating a single potential across all generators."""
        if potential is None:
            potentials: tuple[Potential, ...] = tuple(Zero() for _ in maps)
        elif isinstance(potential, Potential):
            potentials = tuple(potential for _ in maps)
        else:
            potentials = tuple(potential)
        return cls(tuple(maps), potentials, MetricMode(metric_mode))

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(len(self.maps))

    @property
    def m(self) -> int:
        return len(self.maps)

    def with_potentials(self, potential: Potential | Sequence[Potential]) -> SemigroupSystem:
        if isinstance(potential, Potential):
            return replace(self, potentials=tuple(potential for _ in self.maps))
        return replace(self, potentials=tuple(potential))

    def shifted(self, c: float) -> SemigroupSystem:
        """Add the constant c to every potential."""
        return replace(self, potentials=tuple(p.shifted(c) for p in self.potentials))

    def _check_symbol(self, i: int) -> None:
        if not 0 <= i < self.m:
            raise ConfigError(f"symbol {i} out of range for {self.m} generators")

    def apply_generator(self, i: int, x: Any) -> Any:
        self._check_symbol(i)
        return self.maps[i].apply(x)

    def factor(self, i: int, x: Any) -> Any:
        self._check_symbol(i)
        return self.maps[i].factor(x)

    def potential_value(self, i: int, x: Any) -> Any:
        self._check_symbol(i)
        return self.potentials[i].evaluate(self.maps[i], x)

    def distance(self, x: Any, y: Any) -> Any:
        return base_distance(x, y, self.metric_mode)

    def log_factor_bounds(self, points: np.ndarray | None = None) -> tuple[float, float]:
        """(min_i inf log a_i, max_i sup log a_i) over the points or a dense grid."""
        grid = _sup_grid() if points is None else np.asarray(points, dtype=float)
        lows, highs = [], []
        for fmap in self.maps:
            logs = np.log(np.asarray(fmap.factor(grid), dtype=float))
            lows.append(float(np.min(logs)))
            highs.append(float(np.max(logs)))
        return min(lows), max(highs)

    def max_log_factor(self) -> float:
        """Upper bound for log a over [0, 1), exact for the built-in families."""
        bounds = [fmap.slope_bounds() for fmap in self.maps]
        if all(b is not None for b in bounds):
            return math.log(max(b[1] for b in bounds if b is not None))
        return self.log_factor_bounds()[1]

    def max_factor(self) -> float:
        return math.exp(self.max_log_factor())

    def potential_bounds(self) -> tuple[float, float]:
        """(inf, sup) of the potentials on a dense grid."""
        grid = _sup_grid()
        values = [np.asarray(self.potential_value(i, grid), dtype=float) for i in range(self.m)]
        return float(min(v.min() for v in values)), float(max(v.max() for v in values))

    def potential_modulus(self, epsilon: float) -> float:
        """Largest |phi_i(x) - phi_i(y)| over grid pairs with d(x, y) <= epsilon."""
        grid = _sup_grid()
        step = grid[1] - grid[0]
        lags = int(math.floor(epsilon / step))
        worst = 0.0
        for i in range(self.m):
            if isinstance(self.potentials[i], Zero | Constant):
                continue
            values = np.asarray(self.potential_value(i, grid), dtype=float)
            for lag in range(1, min(lags, grid.size - 1) + 1):
                if self.metric_mode is MetricMode.CIRCLE:
                    gaps = values - np.roll(values, -lag)
                else:
                    gaps = values[lag:] - values[:-lag]
                worst = max(worst, float(np.max(np.abs(gaps))))
        return worst

    def to_dict(self) -> dict[str, Any]:
        return {
            "metric": str(self.metric_mode),
            "maps": [fmap.to_dict() for fmap in self.maps],
            "potentials": [p.to_dict() for p in self.potentials],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> SemigroupSystem:
        maps = tuple(map_from_dict(item) for item in data["maps"])
        potentials = data.get("potentials")
        if potentials is None:
            return cls.create(maps, None, data.get("metric", "circle"))
        return cls(maps, tuple(potential_from_dict(p) for p in potentials), MetricMode(data.get("metric", "circle")))


def _sup_grid() -> np.ndarray:
    return np.linspace(0.0, 1.0, SUP_GRID_SIZE, endpoint=False)


def potential_sup_distance(
    system: SemigroupSystem, phi: Sequence[Potential], psi: Sequence[Potential]
) -> float:
    """
    max_i sup_x |phi_i(x) - psi_i(x)| over a dense grid of [0, 1).

    Args:
        system: Supplies the maps that log-factor potentials are evaluated on
        phi: One potential per generator
        psi: One potential per generator

    Returns:
        The sup-norm distance; exact when both sides are constants
    """
    if len(phi) != system.m or len(psi) != system.m:
        raise ConfigError("both potential families need one entry per generator")
    if all(isinstance(p, Zero | Constant) for p in (*phi, *psi)):
        return max(abs(_constant_value(a) - _constant_value(b)) for a, b in zip(phi, psi, strict=True))
    grid = _sup_grid()
    worst = 0.0
    for fmap, a, b in zip(system.maps, phi, psi, strict=True):
        diff = np.abs(np.asarray(a.evaluate(fmap, grid)) - np.asarray(b.evaluate(fmap, grid)))
        worst = max(worst, float(np.max(diff)))
    return worst


def _constant_value(p: Potential) -> float:
    return float(p.value) if isinstance(p, Constant) else 0.0


class FamilyCertificate(NamedTuple):
    """Analytic membership facts known for a built-in family."""

    a_interval: tuple[float, float] | None
    a_open_positive: bool
    exceptional_points: tuple[float, ...]
    b_is_whole_space: bool
    description: str


def certify_family(system: SemigroupSystem) -> FamilyCertificate:
    """
    Hard-coded certifications for the built-in map families.

    Constant-slope and full piecewise linear generators with slopes above 1
    place every point in A([log min, log max]) and in B. Manneville-Pomeau
    generators have factor >= 1 everywhere, so B is the whole space, while 0
    is the only point with a vanishing exponent.
    """
    if all(isinstance(f, LinearMod1 | PiecewiseLinearFull) for f in system.maps):
        low = min(f.slope_bounds()[0] for f in system.maps)  # type: ignore[index]
        high = max(f.slope_bounds()[1] for f in system.maps)  # type: ignore[index]
        return FamilyCertificate(
            (math.log(low), math.log(high)), True, (), True, "uniformly expanding piecewise linear"
        )
    if all(isinstance(f, MannevillePomeau) for f in system.maps):
        return FamilyCertificate(None, True, (0.0,), True, "Manneville-Pomeau, indifferent at 0")
    if all(isinstance(f, LinearMod1 | PiecewiseLinearFull | MannevillePomeau) for f in system.maps):
        # mixing families keeps factor >= 1 but an all-indifferent word still fixes 0
        return FamilyCertificate(None, True, (0.0,), True, "mixed expanding and indifferent")
    return FamilyCertificate(None, False, (), False, "uncertified")


def geometric_system(system: SemigroupSystem, t: float = 1.0) -> SemigroupSystem:
    """Same maps with the potentials -t log a_i."""
    return system.with_potentials(ScaledLogFactor(-t))
