"""
Region specifications and the finite clouds that stand in for them.
"""

from __future__ import annotations

import hashlib
import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Any

import numpy as np

from src.semigroup.errors import BudgetExceededError, ConfigError
from src.semigroup.numerics_config import CLOUD_BUDGET

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RegionSpec:
    def to_dict(self) -> dict[str, Any]:
        raise NotImplementedError


@dataclass(frozen=True)
class Interval(RegionSpec):
    a: float = 0.0
    b: float = 1.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.a < self.b <= 1.0:
            raise ConfigError(f"interval needs 0 <= a < b <= 1, got [{self.a}, {self.b}]")

    def to_dict(self) -> dict[str, Any]:
        return {"kind": "interval", "a": self.a, "b": self.b}


@dataclass(frozen=True)
class CantorSymbolic(RegionSpec):
    """Points whose branch coding under a full-branch map uses only ``allowed`` digits."""

    base_slopes: tuple[float, ...]
    allowed: tuple[int, ...]
    depth: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "base_slopes", tuple(float(a) for a in self.base_slopes))
        object.__setattr__(self, "allowed", tuple(sorted(set(int(d) for d in self.allowed))))
        if len(self.base_slopes) < 2:
            raise ConfigError("a Cantor region needs a base map with at least two branches")
        if not math.isclose(sum(1.0 / a for a in self.base_slopes), 1.0, abs_tol=1e-9):
            raise ConfigError(f"base branch lengths must sum to 1, got slopes {self.base_slopes}")
        if not self.allowed or self.allowed[0] < 0 or self.allowed[-1] >= len(self.base_slopes):
            raise ConfigError(f"allowed branches {self.allowed} must be a nonempty subset of the branches")
        if self.depth < 1:
            raise ConfigError(f"depth must be positive, got {self.depth}")

    @classmethod
    def uniform(cls, branches: int, allowed: tuple[int, ...], depth: int) -> CantorSymbolic:
        return cls(tuple(float(branches) for _ in range(branches)), allowed, depth)

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": "cantor",
            "base_slopes": list(self.base_slopes),
            "allowed": list(self.allowed),
            "depth": self.depth,
        }


@dataclass(frozen=True)
class PointList(RegionSpec):
    points: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(float(p) for p in self.points))
        if not self.points:
            raise ConfigError("a point list needs at least one point")
        if any(not 0.0 <= p < 1.0 for p in self.points):
            raise ConfigError("points must lie in [0, 1)")

    def to_dict(self) -> dict[str, Any]:
        return {"kind": "points", "points": list(self.points)}


@dataclass(frozen=True, eq=False)
class SampleCloud:
    """
    A finite set of points standing in for Z.

    ``resolution`` bounds the distance from any point of the represented set to
    the cloud. Internally the estimators work on the sorted copy; indices they
    return refer to ``points`` as stored.
    """

    points: np.ndarray
    resolution: float
    source: tuple[RegionSpec, ...] = ()

    def __post_init__(self) -> None:
        points = np.array(self.points, dtype=float).reshape(-1)
        if points.size == 0:
            raise ConfigError("a sample cloud needs at least one point")
        if not self.resolution > 0:
            raise ConfigError(f"cloud resolution must be positive, got {self.resolution}")
        points.setflags(write=False)
        object.__setattr__(self, "points", points)

    def __len__(self) -> int:
        return int(self.points.size)

    @cached_property
    def cloud_id(self) -> str:
        digest = hashlib.blake2b(self.points.tobytes(), digest_size=12)
        digest.update(repr(self.resolution).encode())
        return digest.hexdigest()

    @cached_property
    def order(self) -> np.ndarray:
        return np.argsort(self.points, kind="stable")

    @cached_property
    def sorted_points(self) -> np.ndarray:
        values = self.points[self.order]
        values.setflags(write=False)
        return values

    def union(self, other: SampleCloud) -> SampleCloud:
        return SampleCloud(
            np.concatenate((self.points, other.points)),
            max(self.resolution, other.resolution),
            self.source + other.source,
        )

    def subset(self, indices: Any) -> SampleCloud:
        return SampleCloud(self.points[np.asarray(indices, dtype=np.int64)], self.resolution, self.source)


def discretize(region: RegionSpec, h: float | None = None, budget: int = CLOUD_BUDGET) -> SampleCloud:
    """
    Represent a region by a finite cloud.

    Args:
        region: Interval, Cantor or explicit point region
        h: Requested resolution; optional for Cantor regions, whose depth fixes it
        budget: Largest number of points to produce

    Returns:
        A cloud within h of every point of the region
    """
    if h is not None and not h > 0:
        raise ConfigError(f"resolution must be positive, got {h}")
    if isinstance(region, Interval):
        if h is None:
            raise ConfigError("an interval region needs a resolution")
        count = max(1, math.ceil((region.b - region.a) / h - 1e-9))
        if count > budget:
            raise BudgetExceededError(f"{count} grid points exceed the cloud budget {budget}")
        points = region.a + h * np.arange(count, dtype=float)
        return SampleCloud(points, h, (region,))
    if isinstance(region, CantorSymbolic):
        return _cantor_cloud(region, h, budget)
    if isinstance(region, PointList):
        if h is None:
            raise ConfigError("a point list needs a resolution")
        return SampleCloud(np.asarray(region.points, dtype=float), h, (region,))
    raise ConfigError(f"unsupported region {type(region).__name__}")


def _cantor_cloud(region: CantorSymbolic, h: float | None, budget: int) -> SampleCloud:
    count = len(region.allowed) ** region.depth
    if count > budget:
        raise BudgetExceededError(f"{count} cylinders exceed the cloud budget {budget}")
    slopes = np.asarray(region.base_slopes)
    starts = np.concatenate(([0.0], np.cumsum(1.0 / slopes)[:-1]))
    allowed = np.asarray(region.allowed)
    lefts = np.zeros(1)
    widths = np.ones(1)
    # lexicographic digit order keeps the cylinders sorted left to right
    for _ in range(region.depth):
        lefts = (lefts[:, None] + widths[:, None] * starts[allowed][None, :]).reshape(-1)
        widths = (widths[:, None] / slopes[allowed][None, :]).reshape(-1)
    resolution = float(widths.max()) / 2.0
    if h is not None and resolution > h:
        raise ConfigError(f"depth {region.depth} only resolves {resolution:.3g}, above the requested {h}")
    logger.debug("Cantor cloud: %d cylinders, resolution %.3g", count, resolution)
    return SampleCloud(lefts + widths / 2.0, resolution, (region,))


def region_from_dict(data: dict[str, Any]) -> RegionSpec:
    kind = data.get("kind")
    if kind == "interval":
        return Interval(float(data.get("a", 0.0)), float(data.get("b", 1.0)))
    if kind == "cantor":
        return CantorSymbolic(tuple(data["base_slopes"]), tuple(data["allowed"]), int(data["depth"]))
    if kind == "points":
        return PointList(tuple(data["points"]))
    raise ConfigError(f"unknown region kind {kind!r}")
