"""
Potentials attached to the generators.

Only three families are supported: the zero potential, constants and multiples
of the geometric potential log a_i. The family -t log a used by the Bowen
equation is ``ScaledLogFactor(-t)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from src.semigroup.errors import ConfigError
from src.semigroup.systems.maps import ConformalMap


@dataclass(frozen=True)
class Potential:
    def evaluate(self, conformal_map: ConformalMap, x: Any) -> Any:
        raise NotImplementedError

    def shifted(self, c: float) -> Potential:
        raise NotImplementedError

    def to_dict(self) -> dict[str, Any]:
        raise NotImplementedError


@dataclass(frozen=True)
class Zero(Potential):
    def evaluate(self, conformal_map: ConformalMap, x: Any) -> Any:
        return np.zeros_like(np.asarray(x, dtype=float)) if np.ndim(x) else 0.0

    def shifted(self, c: float) -> Potential:
        return Constant(c) if c else self

    def to_dict(self) -> dict[str, Any]:
        return {"kind": "zero"}


@dataclass(frozen=True)
class Constant(Potential):
    value: float

    def evaluate(self, conformal_map: ConformalMap, x: Any) -> Any:
        if np.ndim(x):
            return np.full(np.shape(x), float(self.value))
        return float(self.value)

    def shifted(self, c: float) -> Potential:
        return Constant(self.value + c)

    def to_dict(self) -> dict[str, Any]:
        return {"kind": "constant", "value": self.value}


@dataclass(frozen=True)
class ScaledLogFactor(Potential):
    """coefficient * log a_i(x) + offset."""

    coefficient: float
    offset: float = 0.0

    def evaluate(self, conformal_map: ConformalMap, x: Any) -> Any:
        values = self.coefficient * np.log(conformal_map.factor(x)) + self.offset
        return float(values) if np.ndim(values) == 0 else values

    def shifted(self, c: float) -> Potential:
        return ScaledLogFactor(self.coefficient, self.offset + c)

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {"kind": "scaled_log_factor", "coefficient": self.coefficient}
        if self.offset:
            data["offset"] = self.offset
        return data


def geometric_potential(t: float = 1.0) -> ScaledLogFactor:
    """The potential -t log a."""
    return ScaledLogFactor(-t)


def ordering_token(potentials: tuple[Potential, ...]) -> str | None:
    """
    Name the greedy ordering a potential family induces on a cloud.

    Families with the same token order every cloud identically, so selections
    built for one of them can be reused for the others. None means no sharing.
    """
    if all(isinstance(p, Zero | Constant) for p in potentials):
        return "index"
    if all(isinstance(p, ScaledLogFactor) for p in potentials):
        coefficients = {p.coefficient for p in potentials}  # type: ignore[attr-defined]
        if len(coefficients) != 1:
            return None
        (c,) = coefficients
        if c == 0:
            return "index"
        return "desc_log" if c > 0 else "asc_log"
    return None


def potential_from_dict(data: dict[str, Any]) -> Potential:
    kind = data.get("kind")
    if kind == "zero":
        return Zero()
    if kind == "constant":
        return Constant(float(data.get("value", 0.0)))
    if kind == "scaled_log_factor":
        return ScaledLogFactor(float(data.get("coefficient", 1.0)), float(data.get("offset", 0.0)))
    raise ConfigError(f"unknown potential kind {kind!r}")
