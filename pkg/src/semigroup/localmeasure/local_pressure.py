"""
Local pressures of a measure at a point and the global sandwich they give.

At horizon n and radius r the lower local value is
-(1/n) max_{|w|=n} (log mu(B_w(x, r)) - S_w Phi(x)) and the upper one takes the
min over words instead. The limits in r and n are replaced by the values at the
largest horizon reached and the smallest radius that reaches it.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any, NamedTuple

import numpy as np

from src.semigroup.dynamics import birkhoff_sum
from src.semigroup.errors import ConfigError, Flag
from src.semigroup.localmeasure.measures import MeasureModel, bowen_ball_mass
from src.semigroup.numerics_config import RADIUS_AGREEMENT_TOLERANCE, WORD_BUDGET
from src.semigroup.parallel import ordered_map
from src.semigroup.pressure import PressureEstimate, Schedule, capacity_pressure, caratheodory_pressure
from src.semigroup.sets import SampleCloud
from src.semigroup.systems import SemigroupSystem
from src.semigroup.words import enumerate_words

logger = logging.getLogger(__name__)

LOCAL_COLUMNS = ("x", "n", "r", "lower", "upper", "zero_mass")


class LocalCell(NamedTuple):
    n: int
    r: float
    lower: float
    upper: float
    zero_mass: bool


@dataclass(frozen=True)
class LocalPressureReport:
    x: float
    radii: tuple[float, ...]
    cells: tuple[LocalCell, ...]
    lower: float
    upper: float
    horizon: int
    radius: float
    flags: frozenset[Flag] = frozenset()

    def rows(self) -> list[dict[str, Any]]:
        return [
            {"x": self.x, "n": c.n, "r": c.r, "lower": c.lower, "upper": c.upper, "zero_mass": c.zero_mass}
            for c in self.cells
        ]

    def to_dict(self) -> dict[str, Any]:
        return {
            "x": self.x,
            "lower": self.lower,
            "upper": self.upper,
            "horizon": self.horizon,
            "radius": self.radius,
            "flags": sorted(str(f) for f in self.flags),
        }


@dataclass(frozen=True)
class SandwichReport:
    """inf_x lower local pressure <= P_Z <= sup_x upper local pressure, up to tol."""

    inf_lower: float
    pressure: float
    sup_upper: float
    tol: float
    passed: bool
    points: tuple[LocalPressureReport, ...] = ()
    estimate: PressureEstimate | None = None
    flags: frozenset[Flag] = field(default_factory=frozenset)

    def to_dict(self) -> dict[str, Any]:
        return {
            "inf_lower": self.inf_lower,
            "pressure": self.pressure,
            "sup_upper": self.sup_upper,
            "tol": self.tol,
            "passed": self.passed,
            "flags": sorted(str(f) for f in self.flags),
        }


def local_pressure(
    measure: MeasureModel,
    system: SemigroupSystem,
    x: float,
    horizons: Sequence[int],
    radii: Sequence[float],
    word_budget: int = WORD_BUDGET,
    threads: int | None = None,
) -> LocalPressureReport:
    """
    Lower and upper local pressure of ``measure`` at x for the system's potentials.

    Words are enumerated exhaustively at every horizon. A zero ball mass at
    (n, r) ends that radius's horizons at the previous n and raises ZERO_MASS.

    Args:
        measure: Reference measure
        system: Maps and potentials Phi
        x: Base point
        horizons: Word lengths n, each with m**n within the word budget
        radii: Ball radii r

    Returns:
        Per-(n, r) values and the reported pair
    """
    horizons = sorted(set(int(n) for n in horizons))
    radii = tuple(sorted(set(float(r) for r in radii), reverse=True))
    if not horizons or horizons[0] < 1:
        raise ConfigError("horizons must be positive", "commands.local_pressure.horizons")
    if not radii or radii[-1] <= 0:
        raise ConfigError("radii must be positive", "commands.local_pressure.radii")
    flags: set[Flag] = set()
    cells: list[LocalCell] = []
    reached: dict[float, LocalCell] = {}
    for r in radii:
        for n in horizons:
            words = enumerate_words(system.alphabet, n, word_budget)

            def term(w, r=r):
                estimate = bowen_ball_mass(measure, system, w, x, r)
                if estimate.zero_mass:
                    return None
                return math.log(estimate.mass) - birkhoff_sum(system, w, x)

            terms = ordered_map(term, words, threads)
            if any(v is None for v in terms):
                flags.add(Flag.ZERO_MASS)
                cells.append(LocalCell(n, r, math.nan, math.nan, True))
                logger.warning("zero ball mass at n=%d r=%g, x=%g; horizon truncated", n, r, x)
                break
            values = np.asarray(terms, dtype=float)
            cell = LocalCell(n, r, -float(values.max()) / n, -float(values.min()) / n, False)
            cells.append(cell)
            reached[r] = cell
    if not reached:
        raise ConfigError(f"every ball around x={x} has zero mass at the first horizon")
    horizon = max(cell.n for cell in reached.values())
    at_horizon = [reached[r] for r in radii if r in reached and reached[r].n == horizon]
    best = at_horizon[-1]
    if len(at_horizon) >= 2:
        previous = at_horizon[-2]
        if (
            abs(best.lower - previous.lower) > RADIUS_AGREEMENT_TOLERANCE
            or abs(best.upper - previous.upper) > RADIUS_AGREEMENT_TOLERANCE
        ):
            flags.add(Flag.RADIUS_UNSTABLE)
    if measure.kind == "lebesgue":
        flags.add(Flag.MONTE_CARLO)
    return LocalPressureReport(
        x=float(x),
        radii=radii,
        cells=tuple(cells),
        lower=best.lower,
        upper=best.upper,
        horizon=horizon,
        radius=best.r,
        flags=frozenset(flags),
    )


def sandwich_check(
    measure: MeasureModel,
    system: SemigroupSystem,
    cloud: SampleCloud,
    schedule: Schedule,
    points: Sequence[float],
    horizons: Sequence[int],
    radii: Sequence[float],
    tol: float = 0.1,
    method: str = "caratheodory",
    word_budget: int = WORD_BUDGET,
    threads: int | None = None,
) -> SandwichReport:
    """
    Compare the pressure of the cloud with local pressures at sample points.

    ``method`` picks the global estimator: "caratheodory" (default) or "capacity".
    """
    if not points:
        raise ConfigError("at least one sample point is required", "commands.local_pressure.points")
    if method == "caratheodory":
        estimate = caratheodory_pressure(system, cloud, schedule, threads=threads)
    elif method == "capacity":
        estimate = capacity_pressure(system, cloud, schedule, threads=threads)
    else:
        raise ConfigError(f"unknown method {method!r}", "commands.local_pressure.method")
    reports = tuple(
        local_pressure(measure, system, x, horizons, radii, word_budget, threads) for x in points
    )
    inf_lower = min(rep.lower for rep in reports)
    sup_upper = max(rep.upper for rep in reports)
    passed = inf_lower - tol <= estimate.value <= sup_upper + tol
    flags = frozenset(estimate.flags).union(*(rep.flags for rep in reports))
    logger.info(
        "sandwich %.4f <= %.4f <= %.4f (tol %.2f): %s", inf_lower, estimate.value, sup_upper, tol, passed
    )
    return SandwichReport(inf_lower, estimate.value, sup_upper, tol, passed, reports, estimate, flags)
