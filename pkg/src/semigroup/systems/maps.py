"""
Conformal maps of the circle or interval.

Each map is described by a symbolic lift on [0, 1) built with sympy; the lift and
its derivative are lambdified to numpy once per instance. Images are reduced
mod 1 and the conformal factor is the absolute derivative of the lift.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import StrEnum
from functools import cached_property
from typing import Any

import numpy as np
import sympy as sp

from src.semigroup.errors import ConfigError

logger = logging.getLogger(__name__)

X = sp.Symbol("x", nonnegative=True)


def _number(value: float) -> sp.Float:
    # 17 digits keep the float exact when lambdified back to numpy
    return sp.Float(float(value), 17)


class MetricMode(StrEnum):
    CIRCLE = "circle"
    INTERVAL = "interval"


def base_distance(x: Any, y: Any, mode: MetricMode) -> Any:
    """Circle distance min(|x - y|, 1 - |x - y|) or plain interval distance."""
    diff = np.abs(np.asarray(x, dtype=float) - np.asarray(y, dtype=float))
    if mode is MetricMode.CIRCLE:
        diff = np.minimum(diff, 1.0 - diff)
    return diff


@dataclass(frozen=True)
class ConformalMap:
    """Base class; subclasses provide ``lift_expression``."""

    kind: str = field(init=False)

    def lift_expression(self) -> sp.Expr:
        raise NotImplementedError

    @cached_property
    def _lift(self):
        return sp.lambdify(X, self.lift_expression(), modules="numpy")

    @cached_property
    def _derivative(self):
        return sp.lambdify(X, sp.diff(self.lift_expression(), X), modules="numpy")

    def apply(self, x: Any) -> Any:
        points = np.asarray(x, dtype=float)
        image = np.mod(np.broadcast_to(self._lift(points), points.shape).astype(float), 1.0)
        return float(image) if image.ndim == 0 else image

    def factor(self, x: Any) -> Any:
        points = np.asarray(x, dtype=float)
        value = np.abs(np.broadcast_to(self._derivative(points), points.shape).astype(float))
        return float(value) if value.ndim == 0 else value

    def slope_bounds(self) -> tuple[float, float] | None:
        """Exact (inf, sup) of the factor when it is known in closed form."""
        return None

    def to_dict(self) -> dict[str, Any]:
        raise NotImplementedError


@dataclass(frozen=True)
class LinearMod1(ConformalMap):
    slope: int = 2

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", "linear_mod1")
        if isinstance(self.slope, bool) or int(self.slope) != self.slope or self.slope < 2:
            raise ConfigError(f"slope must be an integer >= 2, got {self.slope}")
        object.__setattr__(self, "slope", int(self.slope))

    def lift_expression(self) -> sp.Expr:
        return sp.Integer(int(self.slope)) * X

    def slope_bounds(self) -> tuple[float, float]:
        return float(self.slope), float(self.slope)

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "slope": int(self.slope)}


@dataclass(frozen=True)
class MannevillePomeau(ConformalMap):
    """x + x**(1 + s) mod 1, with an indifferent fixed point at 0."""

    s: float = 0.5

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", "manneville_pomeau")
        if not 0.0 < self.s < 1.0:
            raise ConfigError(f"s must lie in (0, 1), got {self.s}")

    def lift_expression(self) -> sp.Expr:
        return X + X ** (1 + _number(self.s))

    def slope_bounds(self) -> tuple[float, float]:
        return 1.0, 2.0 + self.s

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "s": self.s}


@dataclass(frozen=True)
class PiecewiseLinearFull(ConformalMap):
    """Full-branch piecewise linear map; branch j has length 1 / slopes[j].

    A branch cut belongs to the branch on its right.
    """

    slopes: tuple[float, ...] = (2.0, 2.0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", "piecewise_linear")
        object.__setattr__(self, "slopes", tuple(float(a) for a in self.slopes))
        if len(self.slopes) < 2:
            raise ConfigError("a full piecewise linear map needs at least two branches")
        if any(a <= 1.0 for a in self.slopes):
            raise ConfigError(f"branch slopes must exceed 1, got {self.slopes}")
        if not math.isclose(sum(1.0 / a for a in self.slopes), 1.0, abs_tol=1e-9):
            raise ConfigError(f"branch lengths 1/slope must sum to 1, got {self.slopes}")

    @property
    def cuts(self) -> tuple[float, ...]:
        """Left endpoints of the branches."""
        return tuple(float(c) for c in np.concatenate(([0.0], np.cumsum([1.0 / a for a in self.slopes])[:-1])))

    def lift_expression(self) -> sp.Expr:
        pieces = []
        for j, (a, start) in enumerate(zip(self.slopes, self.cuts, strict=True)):
            branch = j + _number(a) * (X - _number(start))
            if j + 1 < len(self.slopes):
                pieces.append((branch, X < _number(self.cuts[j + 1])))
            else:
                pieces.append((branch, True))
        return sp.Piecewise(*pieces)

    def slope_bounds(self) -> tuple[float, float]:
        return min(self.slopes), max(self.slopes)

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "slopes": list(self.slopes)}


def map_from_dict(data: dict[str, Any]) -> ConformalMap:
    kind = data.get("kind")
    if kind == "linear_mod1":
        return LinearMod1(slope=data.get("slope", 2))
    if kind == "manneville_pomeau":
        return MannevillePomeau(s=float(data.get("s", 0.5)))
    if kind == "piecewise_linear":
        return PiecewiseLinearFull(slopes=tuple(data.get("slopes", ())))
    raise ConfigError(f"unknown map kind {kind!r}")
