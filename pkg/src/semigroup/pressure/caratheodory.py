"""
Caratheodory-type pressure from weighted covers by Bowen balls.

For a base word w of length N the cloud is covered by closed balls
B_{w u}(x, delta), |u| <= L, centred at cloud points. A ball costs
exp(-alpha |w u| + S_{w u} Phi(x)) (``center``) or
exp(-alpha (|w u| + 1) + sup_B S_{w u} Phi) (``ball_sup``). The cheapest cover
is approximated by the greedy rule "smallest cost per newly covered point", and
M'(N, alpha) averages the cover costs over words.

M'(N, alpha) grows like exp(N (P - alpha)), so the estimate is the alpha at
which log M'(N_max) - log M'(N_min) changes sign. The alpha at which
M'(N_max) crosses 1 is reported as a diagnostic.
"""

from __future__ import annotations

import heapq
import itertools
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from src.semigroup.errors import ConfigError, CoverFailError, Flag, NumericalAbort
from src.semigroup.numerics_config import (
    CARATHEODORY_ALPHA_TOL,
    CARATHEODORY_EXTENSION,
    MAX_BISECTION_STEPS,
    MAX_COVER_SIZE,
)
from src.semigroup.parallel import ordered_map
from src.semigroup.pressure.models import PartitionCell, PressureEstimate
from src.semigroup.pressure.partition import cell_resolved, schedule_words
from src.semigroup.pressure.schedule import Schedule
from src.semigroup.sets import SampleCloud
from src.semigroup.sets.covers import sorted_birkhoff_sums
from src.semigroup.sets.neighborhoods import Neighbourhoods, bowen_neighbourhoods
from src.semigroup.systems import SemigroupSystem
from src.semigroup.words import Word

logger = logging.getLogger(__name__)

WEIGHTINGS = ("center", "ball_sup")


@dataclass(frozen=True)
class _BallFamily:
    """All balls B_{w'}(x, delta) for one extended word w', alpha-free parts only."""

    length: int
    neighbourhoods: Neighbourhoods
    log_weights: np.ndarray


def _ball_families(
    system: SemigroupSystem,
    cloud: SampleCloud,
    w: Word,
    delta: float,
    extension: int,
    weighting: str,
) -> list[_BallFamily]:
    families = []
    for k in range(extension + 1):
        for tail in itertools.product(range(system.m), repeat=k):
            extended = Word(w.symbols + tail)
            neighbourhoods = bowen_neighbourhoods(system, extended, cloud, delta, closed=True)
            sums = sorted_birkhoff_sums(system, extended, cloud)
            if weighting == "ball_sup":
                sums = neighbourhoods.range_max(sums)
                length = len(extended) + 1
            else:
                length = len(extended)
            families.append(_BallFamily(length, neighbourhoods, sums))
    return families


def _cover_log_cost(families: list[_BallFamily], alpha: float, size: int) -> float:
    """Greedy weighted cover of all ``size`` points; log of the total cost."""
    covered = np.zeros(size, dtype=bool)
    heap: list[tuple[float, int, int]] = []
    for f_index, family in enumerate(families):
        keys = family.log_weights - alpha * family.length - np.log(family.neighbourhoods.sizes())
        heap.extend(zip(keys.tolist(), itertools.repeat(f_index), range(size), strict=False))
    heapq.heapify(heap)
    remaining = size
    chosen: list[float] = []
    while remaining:
        key, f_index, i = heapq.heappop(heap)
        family = families[f_index]
        gain = family.neighbourhoods.count_unmarked(i, covered)
        if gain == 0:
            continue
        cost = float(family.log_weights[i]) - alpha * family.length
        current = cost - math.log(gain)
        if current <= key:
            chosen.append(cost)
            family.neighbourhoods.mark(i, covered)
            remaining -= gain
            if len(chosen) > MAX_COVER_SIZE:
                raise CoverFailError(f"cover exceeds {MAX_COVER_SIZE} balls")
        else:
            heapq.heappush(heap, (current, f_index, i))
    return float(logsumexp(chosen))


class _CoverProblem:
    """Ball families for every base word of one length, reused across alphas."""

    def __init__(
        self,
        system: SemigroupSystem,
        cloud: SampleCloud,
        n: int,
        delta: float,
        schedule: Schedule,
        extension: int,
        weighting: str,
    ) -> None:
        self.words, self.mode = schedule_words(system, n, schedule)
        self.size = len(cloud)
        self.families = [
            _ball_families(system, cloud, w, delta, extension, weighting) for w in self.words
        ]

    def log_m_prime(self, alpha: float, threads: int | None) -> float:
        costs = ordered_map(lambda fam: _cover_log_cost(fam, alpha, self.size), self.families, threads)
        return float(logsumexp(costs) - math.log(len(costs)))


def caratheodory_pressure(
    system: SemigroupSystem,
    cloud: SampleCloud,
    schedule: Schedule,
    weighting: str = "center",
    extension: int = CARATHEODORY_EXTENSION,
    alpha_tol: float = CARATHEODORY_ALPHA_TOL,
    threads: int | None = None,
) -> PressureEstimate:
    """
    Critical exponent of the word-averaged weighted Bowen-ball covers.

    Covers use the smallest schedule epsilon as the ball radius delta, the
    shortest and longest schedule word lengths, and extensions |u| <= extension.

    The returned value is the alpha at which log M' stops growing from N_min to
    N_max, not the alpha at which M'(N_max) crosses 1. At finite N the second
    carries a bias of order log(#cover) / N; it is kept in
    ``diagnostics["unit_crossing"]`` (None when the trace does not bracket it).

    Raises:
        CoverFailError: If a cover grows beyond MAX_COVER_SIZE balls
        NumericalAbort: If the sign change cannot be bracketed
    """
    if weighting not in WEIGHTINGS:
        raise ConfigError(f"unknown weighting {weighting!r}", "commands.caratheodory.weighting")
    if extension < 0:
        raise ConfigError("extension must be non-negative", "commands.caratheodory.extension")
    n_min, n_max = schedule.word_lengths[0], schedule.word_lengths[-1]
    if n_min == n_max:
        raise ConfigError("at least two word lengths are required", "schedule.word_lengths")
    delta = schedule.smallest_epsilon
    short = _CoverProblem(system, cloud, n_min, delta, schedule, extension, weighting)
    long = _CoverProblem(system, cloud, n_max, delta, schedule, extension, weighting)

    trace: list[tuple[float, float, float]] = []

    def growth(alpha: float) -> float:
        low = short.log_m_prime(alpha, threads)
        high = long.log_m_prime(alpha, threads)
        trace.append((alpha, low, high))
        logger.debug("alpha=%.6f log M'(N_min)=%.6f log M'(N_max)=%.6f", alpha, low, high)
        return high - low

    phi_low, phi_high = system.potential_bounds()
    lo = phi_low - 1.0
    hi = system.max_log_factor() + phi_high + 1.0
    g_lo, g_hi = growth(lo), growth(hi)
    widenings = 0
    while not (g_lo > 0 > g_hi):
        widenings += 1
        if widenings > 8:
            raise NumericalAbort(f"no sign change of the cover growth on [{lo:.3f}, {hi:.3f}]")
        width = hi - lo
        if g_lo <= 0:
            lo -= width
            g_lo = growth(lo)
        if g_hi >= 0:
            hi += width
            g_hi = growth(hi)
    steps = 0
    while hi - lo > alpha_tol and steps < MAX_BISECTION_STEPS:
        mid = 0.5 * (lo + hi)
        if growth(mid) > 0:
            lo = mid
        else:
            hi = mid
        steps += 1
    value = 0.5 * (lo + hi)
    trace.sort()
    flags = set()
    if not cell_resolved(system, cloud, n_max + extension, delta):
        flags.add(Flag.UNRESOLVED)
    if short.mode == "monte_carlo" or long.mode == "monte_carlo":
        flags.add(Flag.MONTE_CARLO)
    final = trace[min(range(len(trace)), key=lambda j: abs(trace[j][0] - value))]
    cells = (
        PartitionCell("caratheodory", n_min, delta, len(short.words), final[1], 0.0),
        PartitionCell("caratheodory", n_max, delta, len(long.words), final[2], 0.0),
    )
    estimate = PressureEstimate(
        value=value,
        per_cell=cells,
        slope_fits=(),
        mode="monte_carlo" if Flag.MONTE_CARLO in flags else "exhaustive",
        flags=frozenset(flags),
        lower=lo,
        upper=hi,
        diagnostics={
            "epsilon": delta,
            "weighting": weighting,
            "extension": extension,
            "unit_crossing": _unit_crossing(trace),
            "trace": [list(row) for row in trace],
        },
    )
    logger.info("Caratheodory pressure (%s) = %.6f", weighting, value)
    return estimate


def _unit_crossing(trace: list[tuple[float, float, float]]) -> float | None:
    """Interpolated alpha where log M'(N_max) changes sign, if the trace brackets it."""
    for (a0, _, h0), (a1, _, h1) in itertools.pairwise(trace):
        if h0 >= 0 >= h1 and h0 != h1:
            return a0 + (a1 - a0) * h0 / (h0 - h1)
    return None
