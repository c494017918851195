"""
Partition sums over separated and spanning sets, and their word averages.

Sums are kept in log space: a word's sum is ``logsumexp`` of the Birkhoff sums
of the selected points, and the word average subtracts ``log(#words)``.
"""

from __future__ import annotations

import logging
import math

import numpy as np
from scipy.special import logsumexp

from src.semigroup.errors import ConfigError
from src.semigroup.numerics_config import RESOLUTION_SAFETY
from src.semigroup.parallel import ordered_map
from src.semigroup.pressure.models import AveragedSum, CellSandwich
from src.semigroup.pressure.schedule import Schedule
from src.semigroup.sets import SampleCloud
from src.semigroup.sets.covers import (
    separated_selection,
    sorted_birkhoff_sums,
    spanning_selection,
)
from src.semigroup.systems import SemigroupSystem
from src.semigroup.words import Word, enumerate_words, sample_words

logger = logging.getLogger(__name__)

VARIANTS = ("separated", "spanning")


def log_partition_separated(
    system: SemigroupSystem, cloud: SampleCloud, w: Word, epsilon: float
) -> float:
    sums = sorted_birkhoff_sums(system, w, cloud)
    chosen = separated_selection(system, w, cloud, epsilon, sums)
    return float(logsumexp(sums[chosen]))


def log_partition_spanning(
    system: SemigroupSystem, cloud: SampleCloud, w: Word, epsilon: float
) -> float:
    """log of the cheaper of the greedy cover and the maximal separated set.

    A maximal separated set spans the cloud, so both are spanning sets.
    """
    sums = sorted_birkhoff_sums(system, w, cloud)
    cover = float(logsumexp(sums[spanning_selection(system, w, cloud, epsilon, sums)]))
    packing = float(logsumexp(sums[separated_selection(system, w, cloud, epsilon, sums)]))
    return min(cover, packing)


def partition_sum_separated(
    system: SemigroupSystem, cloud: SampleCloud, w: Word, epsilon: float
) -> float:
    """P_w: sum of exp(S_w Phi) over the greedy maximal separated set."""
    return math.exp(log_partition_separated(system, cloud, w, epsilon))


def partition_sum_spanning(
    system: SemigroupSystem, cloud: SampleCloud, w: Word, epsilon: float
) -> float:
    """Q_w: sum of exp(S_w Phi) over a greedy spanning set; bounds the infimum from above."""
    return math.exp(log_partition_spanning(system, cloud, w, epsilon))


def log_partition(
    system: SemigroupSystem, cloud: SampleCloud, w: Word, epsilon: float, variant: str
) -> float:
    if variant == "separated":
        return log_partition_separated(system, cloud, w, epsilon)
    if variant == "spanning":
        return log_partition_spanning(system, cloud, w, epsilon)
    raise ConfigError(f"unknown partition variant {variant!r}")


def schedule_words(system: SemigroupSystem, n: int, schedule: Schedule) -> tuple[list[Word], str]:
    """Every word of length n, or a seeded sample when m**n exceeds the budget."""
    if schedule.exhaustive(system.m, n):
        return enumerate_words(system.alphabet, n, schedule.word_budget), "exhaustive"
    seed = schedule.require_seed()
    return sample_words(system.alphabet, n, schedule.mc_samples, seed), "monte_carlo"


def average_logs(logs: np.ndarray, mode: str) -> tuple[float, float]:
    """log of the mean of exp(logs), and the delta-method standard error of that log."""
    count = logs.size
    log_mean = float(logsumexp(logs) - math.log(count))
    if mode == "exhaustive" or count < 2:
        return log_mean, 0.0
    scaled = np.exp(logs - logs.max())
    stderr = float(np.std(scaled, ddof=1) / math.sqrt(count) / np.mean(scaled))
    return log_mean, stderr


def averaged_partition(
    system: SemigroupSystem,
    cloud: SampleCloud,
    n: int,
    epsilon: float,
    schedule: Schedule,
    variant: str = "separated",
    threads: int | None = None,
) -> AveragedSum:
    """
    Word average (1/m**n) sum_{|w|=n} of P_w or Q_w, in logs.

    Args:
        system: Maps and potentials
        cloud: Finite stand-in for Z
        n: Word length
        epsilon: Separation or spanning scale
        schedule: Supplies the word budget, sample count and seed
        variant: "separated" or "spanning"
        threads: Worker count for the per-word sums

    Returns:
        The log-average with its standard error; the error is 0 when exhaustive
    """
    words, mode = schedule_words(system, n, schedule)
    logs = np.asarray(
        ordered_map(lambda w: log_partition(system, cloud, w, epsilon, variant), words, threads)
    )
    log_value, stderr = average_logs(logs, mode)
    logger.debug("%s n=%d eps=%g words=%d log-avg=%.6f", variant, n, epsilon, len(words), log_value)
    return AveragedSum(log_value, stderr, len(words), mode)


def cell_resolved(system: SemigroupSystem, cloud: SampleCloud, n: int, epsilon: float) -> bool:
    """Bowen balls at this cell are still wider than the cloud spacing."""
    return cloud.resolution <= RESOLUTION_SAFETY * epsilon * math.exp(-n * system.max_log_factor())


def spanning_separated_sandwich(
    system: SemigroupSystem, cloud: SampleCloud, w: Word, epsilon: float
) -> CellSandwich:
    """Check Q_w(eps) <= P_w(eps) <= exp(n * modulus) Q_w(eps / 2) as computed."""
    log_q = log_partition_spanning(system, cloud, w, epsilon)
    log_p = log_partition_separated(system, cloud, w, epsilon)
    log_q_half = log_partition_spanning(system, cloud, w, epsilon / 2.0)
    modulus = system.potential_modulus(epsilon)
    slack = 1e-12
    return CellSandwich(
        n=len(w),
        epsilon=epsilon,
        log_spanning=log_q,
        log_separated=log_p,
        log_spanning_half=log_q_half,
        modulus=modulus,
        lower_holds=log_q <= log_p + slack,
        upper_holds=log_p <= len(w) * modulus + log_q_half + slack,
    )
