"""
Capacity pressure and entropy from the growth of word-averaged partition sums.

For each epsilon the log-average sum is regressed on N; the slope removes the
epsilon-dependent covering constant. The estimate is the slope at the smallest
epsilon whose cells are all resolved by the cloud. Lower and upper values are
the extreme two-point slopes at that epsilon, standing in for liminf and limsup.
"""

from __future__ import annotations

import logging
import math

import numpy as np
from scipy import stats

from src.semigroup.errors import ConfigError, Flag, UnresolvedError
from src.semigroup.numerics_config import MIN_WORD_LENGTHS, NONMONOTONE_TOLERANCE
from src.semigroup.pressure.models import PartitionCell, PressureEstimate, SlopeFit
from src.semigroup.pressure.partition import VARIANTS, averaged_partition, cell_resolved
from src.semigroup.pressure.schedule import Schedule
from src.semigroup.sets import SampleCloud
from src.semigroup.systems import SemigroupSystem, Zero

logger = logging.getLogger(__name__)


def fit_slope(epsilon: float, lengths: list[int], logs: list[float], resolved: bool) -> SlopeFit:
    x = np.asarray(lengths, dtype=float)
    y = np.asarray(logs, dtype=float)
    fit = stats.linregress(x, y)
    residual = float(np.sqrt(np.mean((y - (fit.intercept + fit.slope * x)) ** 2)))
    successive = tuple(float(v) for v in np.diff(y) / np.diff(x))
    return SlopeFit(epsilon, float(fit.slope), float(fit.intercept), residual, successive, resolved)


def estimate_from_cells(
    cells: list[PartitionCell], schedule: Schedule, mode: str, extra_flags: set[Flag] | None = None
) -> PressureEstimate:
    """Regress every epsilon column and pick the value at the smallest resolved epsilon."""
    fits = []
    for epsilon in schedule.epsilons:
        column = [c for c in cells if c.epsilon == epsilon]
        fits.append(
            fit_slope(
                epsilon,
                [c.n for c in column],
                [c.log_avg_sum for c in column],
                all(c.resolved for c in column),
            )
        )
    flags = set(extra_flags or ())
    if mode == "monte_carlo":
        flags.add(Flag.MONTE_CARLO)
    if not all(c.resolved for c in cells):
        flags.add(Flag.UNRESOLVED)
    resolved = [fit for fit in fits if fit.resolved]
    if not resolved:
        partial = PressureEstimate(
            math.nan, tuple(cells), tuple(fits), mode, frozenset(flags | {Flag.UNRESOLVED})
        )
        raise UnresolvedError("no epsilon is resolved by the cloud at every word length", partial)
    best = resolved[-1]
    if len(resolved) >= 2 and abs(best.slope - resolved[-2].slope) > NONMONOTONE_TOLERANCE:
        flags.add(Flag.NONMONOTONE)
    return PressureEstimate(
        value=best.slope,
        per_cell=tuple(cells),
        slope_fits=tuple(fits),
        mode=mode,
        flags=frozenset(flags),
        lower=min(best.successive_slopes),
        upper=max(best.successive_slopes),
        diagnostics={"epsilon": best.epsilon},
    )


def capacity_pressure(
    system: SemigroupSystem,
    cloud: SampleCloud,
    schedule: Schedule,
    variant: str = "separated",
    threads: int | None = None,
) -> PressureEstimate:
    """
    Upper capacity pressure of the cloud for the system's potentials.

    Args:
        system: Maps and potentials Phi
        cloud: Finite stand-in for Z
        schedule: Word lengths, epsilons, budgets and seed
        variant: "separated" (default) or "spanning" partition sums
        threads: Worker count for per-word sums

    Returns:
        The regression estimate with per-cell values and diagnostics

    Raises:
        UnresolvedError: If no epsilon is resolved at every word length
    """
    if variant not in VARIANTS:
        raise ConfigError(f"unknown variant {variant!r}", "commands.pressure.variant")
    if len(schedule.word_lengths) < MIN_WORD_LENGTHS:
        raise ConfigError(
            f"at least {MIN_WORD_LENGTHS} word lengths are needed for a slope fit",
            "schedule.word_lengths",
        )
    cells: list[PartitionCell] = []
    mode = "exhaustive"
    for epsilon in schedule.epsilons:
        for n in schedule.word_lengths:
            avg = averaged_partition(system, cloud, n, epsilon, schedule, variant, threads)
            if avg.mode == "monte_carlo":
                mode = "monte_carlo"
            cells.append(
                PartitionCell(
                    variant,
                    n,
                    epsilon,
                    avg.n_words,
                    avg.log_value,
                    avg.stderr,
                    cell_resolved(system, cloud, n, epsilon),
                )
            )
    estimate = estimate_from_cells(cells, schedule, mode)
    logger.info(
        "capacity pressure (%s) = %.6f [%.6f, %.6f] flags=%s",
        variant,
        estimate.value,
        estimate.lower,
        estimate.upper,
        sorted(estimate.flags),
    )
    return estimate


def entropy(
    system: SemigroupSystem,
    cloud: SampleCloud,
    schedule: Schedule,
    variant: str = "separated",
    threads: int | None = None,
) -> PressureEstimate:
    """Topological entropy: capacity pressure of the zero potential."""
    return capacity_pressure(system.with_potentials(Zero()), cloud, schedule, variant, threads)
