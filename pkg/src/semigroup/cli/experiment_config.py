"""
Experiment config documents and their validation.

A config is one JSON document:

    {
        "name": "doubling",
        "system": {"metric": "circle", "maps": [{"kind": "linear_mod1", "slope": 2}]},
        "potential": {"kind": "zero"},
        "region": {"kind": "interval", "a": 0.0, "b": 1.0, "resolution": 1.52587890625e-05},
        "schedule": {"word_lengths": [6, 7, 8], "epsilons": [0.125, 0.0625], "seed": 7},
        "commands": {"bowen": {"t_tol": 0.01}}
    }

Every violation raises ConfigError with the dotted path of the offending
entry, e.g. ``config.system.maps[1].slope``.
"""

from __future__ import annotations

import json
import logging
import numbers
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Literal, TypedDict

from src.semigroup.errors import ConfigError
from src.semigroup.localmeasure import MeasureModel, measure_from_dict
from src.semigroup.pressure import Schedule
from src.semigroup.sets import RegionSpec, SampleCloud, discretize, region_from_dict
from src.semigroup.systems import ConformalMap, MetricMode, Potential, SemigroupSystem
from src.semigroup.systems.maps import map_from_dict
from src.semigroup.systems.potentials import potential_from_dict

logger = logging.getLogger(__name__)


class MapConfig(TypedDict, total=False):
    """One generator."""

    kind: Literal["linear_mod1", "manneville_pomeau", "piecewise_linear"]
    slope: int  # linear_mod1
    s: float  # manneville_pomeau exponent in (0, 1)
    slopes: list[float]  # piecewise_linear branch slopes, sum of 1/slope = 1


class SystemConfig(TypedDict, total=False):
    metric: Literal["circle", "interval"]
    maps: list[MapConfig]


class PotentialConfig(TypedDict, total=False):
    kind: Literal["zero", "constant", "scaled_log_factor"]
    value: float  # constant
    coefficient: float  # scaled_log_factor
    offset: float  # scaled_log_factor


class RegionConfig(TypedDict, total=False):
    kind: Literal["interval", "cantor", "points"]
    a: float
    b: float
    base_slopes: list[float]
    allowed: list[int]
    depth: int
    points: list[float]
    resolution: float  # cloud spacing h; optional for cantor regions


class ScheduleConfig(TypedDict, total=False):
    word_lengths: list[int]
    epsilons: list[float]
    word_budget: int
    mc_samples: int
    seed: int | None


class ExperimentConfig(TypedDict, total=False):
    """Top-level document."""

    name: str
    system: SystemConfig
    potential: PotentialConfig | list[PotentialConfig]
    region: RegionConfig
    schedule: ScheduleConfig
    commands: dict[str, dict[str, Any]]


COMMAND_SECTIONS = (
    "pressure",
    "caratheodory",
    "bowen",
    "lyapunov",
    "classify",
    "local_pressure",
    "skew",
    "dimension",
    "acceptance",
)


@dataclass(frozen=True)
class Experiment:
    """A validated config with its domain objects built."""

    name: str
    system: SemigroupSystem
    region: RegionSpec
    resolution: float | None
    schedule: Schedule
    commands: dict[str, dict[str, Any]] = field(default_factory=dict)
    raw: dict[str, Any] = field(default_factory=dict)

    def cloud(self) -> SampleCloud:
        return discretize(self.region, self.resolution)

    def command(self, name: str) -> dict[str, Any]:
        return dict(self.commands.get(name, {}))

    def measure(self) -> MeasureModel:
        data = self.command("local_pressure").get("measure", {"kind": "lebesgue"})
        try:
            return measure_from_dict(data, self.schedule.seed)
        except ConfigError as error:
            raise _relocate(error, "config.commands.local_pressure.measure") from error


def load_config(path: str | Path) -> dict[str, Any]:
    """
    Read a config document.

    Raises:
        ConfigError: If the file is missing or is not a JSON object
    """
    try:
        with open(path) as f:
            raw = json.load(f)
    except FileNotFoundError as error:
        raise ConfigError(f"could not find config file at {path}", "config") from error
    except json.JSONDecodeError as error:
        raise ConfigError(f"invalid JSON in {path}: {error.msg} at line {error.lineno}", "config") from error
    if not isinstance(raw, dict):
        raise ConfigError("the document must be a JSON object", "config")
    return raw


def _relocate(error: ConfigError, anchor: str) -> ConfigError:
    """Re-anchor an error raised by a constructor at its position in the document."""
    message = str(error)
    if error.path:
        message = message.removeprefix(f"{error.path}: ")
        if f"config.{error.path}".startswith(anchor):
            return ConfigError(message, f"config.{error.path}")
    return ConfigError(message, anchor)


def _require(data: dict[str, Any], key: str, path: str) -> Any:
    if key not in data:
        raise ConfigError("required entry is missing", f"{path}.{key}")
    return data[key]


def _number(value: Any, path: str, positive: bool = False) -> float:
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise ConfigError(f"expected a number, got {value!r}", path)
    if positive and not value > 0:
        raise ConfigError(f"expected a positive number, got {value!r}", path)
    return float(value)


def _map_entry(item: Any, path: str) -> ConformalMap:
    if not isinstance(item, dict):
        raise ConfigError("each map must be an object", path)
    kind = _require(item, "kind", path)
    if kind == "linear_mod1":
        slope = _require(item, "slope", path)
        if isinstance(slope, bool) or not isinstance(slope, numbers.Integral) or slope < 2:
            raise ConfigError(f"slope must be an integer >= 2, got {slope!r}", f"{path}.slope")
    elif kind == "manneville_pomeau":
        s = _number(_require(item, "s", path), f"{path}.s")
        if not 0 < s < 1:
            raise ConfigError(f"s must lie in (0, 1), got {s}", f"{path}.s")
    elif kind == "piecewise_linear":
        slopes = _require(item, "slopes", path)
        if not isinstance(slopes, list):
            raise ConfigError("slopes must be a list", f"{path}.slopes")
        for j, a in enumerate(slopes):
            _number(a, f"{path}.slopes[{j}]", positive=True)
    else:
        raise ConfigError(f"unknown map kind {kind!r}", f"{path}.kind")
    try:
        return map_from_dict(item)
    except ConfigError as error:
        raise _relocate(error, path) from error


def _potential_entry(item: Any, path: str) -> Potential:
    if not isinstance(item, dict):
        raise ConfigError("a potential must be an object", path)
    kind = item.get("kind", "zero")
    if kind not in ("zero", "constant", "scaled_log_factor"):
        raise ConfigError(f"unknown potential kind {kind!r}", f"{path}.kind")
    for key in ("value", "coefficient", "offset"):
        if key in item:
            _number(item[key], f"{path}.{key}")
    return potential_from_dict({**item, "kind": kind})


def build_system(raw: dict[str, Any]) -> SemigroupSystem:
    system = _require(raw, "system", "config")
    if not isinstance(system, dict):
        raise ConfigError("must be an object", "config.system")
    metric = system.get("metric", "circle")
    if metric not in ("circle", "interval"):
        raise ConfigError(f"unknown metric {metric!r}", "config.system.metric")
    maps_raw = _require(system, "maps", "config.system")
    if not isinstance(maps_raw, list) or not maps_raw:
        raise ConfigError("at least one map is required", "config.system.maps")
    if len(maps_raw) > 16:
        raise ConfigError("at most 16 generators are supported", "config.system.maps")
    maps = [_map_entry(item, f"config.system.maps[{i}]") for i, item in enumerate(maps_raw)]
    potential_raw = raw.get("potential", {"kind": "zero"})
    if isinstance(potential_raw, list):
        if len(potential_raw) != len(maps):
            raise ConfigError(
                f"{len(potential_raw)} potentials for {len(maps)} maps", "config.potential"
            )
        potential: Potential | list[Potential] = [
            _potential_entry(item, f"config.potential[{i}]") for i, item in enumerate(potential_raw)
        ]
    else:
        potential = _potential_entry(potential_raw, "config.potential")
    return SemigroupSystem.create(maps, potential, MetricMode(metric))


def build_region(raw: dict[str, Any]) -> tuple[RegionSpec, float | None]:
    region = _require(raw, "region", "config")
    if not isinstance(region, dict):
        raise ConfigError("must be an object", "config.region")
    kind = _require(region, "kind", "config.region")
    resolution = region.get("resolution")
    if resolution is not None:
        resolution = _number(resolution, "config.region.resolution", positive=True)
    elif kind != "cantor":
        raise ConfigError("required entry is missing", "config.region.resolution")
    if kind == "cantor":
        _require(region, "base_slopes", "config.region")
        _require(region, "allowed", "config.region")
        _require(region, "depth", "config.region")
    elif kind == "points":
        points = _require(region, "points", "config.region")
        if not isinstance(points, list):
            raise ConfigError("points must be a list", "config.region.points")
        for j, p in enumerate(points):
            _number(p, f"config.region.points[{j}]")
    elif kind != "interval":
        raise ConfigError(f"unknown region kind {kind!r}", "config.region.kind")
    try:
        spec = region_from_dict(region)
    except ConfigError as error:
        raise _relocate(error, "config.region") from error
    return spec, resolution


def build_schedule(raw: dict[str, Any], seed_override: int | None = None) -> Schedule:
    schedule = dict(_require(raw, "schedule", "config"))
    for key in ("word_lengths", "epsilons"):
        value = _require(schedule, key, "config.schedule")
        if not isinstance(value, list):
            raise ConfigError("must be a list", f"config.schedule.{key}")
    for j, n in enumerate(schedule["word_lengths"]):
        if isinstance(n, bool) or not isinstance(n, numbers.Integral):
            raise ConfigError(f"expected an integer, got {n!r}", f"config.schedule.word_lengths[{j}]")
    for j, e in enumerate(schedule["epsilons"]):
        _number(e, f"config.schedule.epsilons[{j}]", positive=True)
    if seed_override is not None:
        schedule["seed"] = seed_override
    seed = schedule.get("seed")
    if seed is not None and (isinstance(seed, bool) or not isinstance(seed, numbers.Integral) or seed < 0):
        raise ConfigError(f"seed must be a non-negative integer, got {seed!r}", "config.schedule.seed")
    try:
        return Schedule.from_dict(schedule)
    except ConfigError as error:
        raise _relocate(error, "config.schedule") from error


def validate_config(raw: dict[str, Any], seed_override: int | None = None) -> Experiment:
    """
    Check a config document against the schema and build its domain objects.

    Args:
        raw: Parsed JSON document
        seed_override: Replaces ``schedule.seed`` (the CLI's ``--seed``)

    Returns:
        The validated experiment
    """
    system = build_system(raw)
    region, resolution = build_region(raw)
    schedule = build_schedule(raw, seed_override)
    commands = raw.get("commands", {})
    if not isinstance(commands, dict):
        raise ConfigError("must be an object", "config.commands")
    for name, section in commands.items():
        if name not in COMMAND_SECTIONS:
            raise ConfigError(f"unknown command section {name!r}", f"config.commands.{name}")
        if not isinstance(section, dict):
            raise ConfigError("must be an object", f"config.commands.{name}")
    if schedule.needs_seed(system.m) and schedule.seed is None:
        raise ConfigError(
            f"{system.m}^{max(schedule.word_lengths)} words exceed the budget; a seed is required",
            "config.schedule.seed",
        )
    measure = commands.get("local_pressure", {}).get("measure", {})
    if measure.get("kind", "lebesgue") == "lebesgue" and "local_pressure" in commands and schedule.seed is None:
        raise ConfigError("Lebesgue ball masses are sampled; a seed is required", "config.schedule.seed")
    return Experiment(
        name=str(raw.get("name", "experiment")),
        system=system,
        region=region,
        resolution=resolution,
        schedule=schedule,
        commands={k: dict(v) for k, v in commands.items()},
        raw=raw,
    )
