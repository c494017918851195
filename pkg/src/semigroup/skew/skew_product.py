"""
The skew product F(omega, x) = (sigma omega, f_{omega_0} x) on Sigma_m x X.

Two-sided sequences are stored as finite windows. Under D = max(d', d) two
sequences are eps-apart along F^0 ... F^n exactly when they differ somewhere on
[-K, n + K] with K = floor(log2(1 / eps)), so a maximal (n, eps)-separated set
of Sigma_m x Z is one (w, eps)-separated fibre set per window class, with
w = omega|[0, n-1]. Every word owns the same number of classes, which makes the
symbolic factor an exact count.

The pressure estimate uses that decomposition with a class count measured from
the skew metric. ``skew_bound_rows`` recomputes the sums directly on
Sigma_m x cloud for small cells and compares them with the decomposed value.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field, replace
from typing import Any, NamedTuple

import numpy as np
from scipy.special import logsumexp

from src.semigroup.errors import BudgetExceededError, ConfigError, Flag
from src.semigroup.numerics_config import (
    SKEW_CHECK_BUDGET,
    SKEW_CHECK_EPSILONS,
    SKEW_CHECK_LENGTHS,
    SKEW_CHECK_POINTS,
)
from src.semigroup.pressure import PartitionCell, PressureEstimate, Schedule, averaged_partition, cell_resolved
from src.semigroup.pressure.capacity import capacity_pressure, estimate_from_cells
from src.semigroup.sets import DenseNeighbourhoods, SampleCloud
from src.semigroup.sets.covers import (
    greedy_cover,
    greedy_separated,
    separated_selection,
    sorted_birkhoff_sums,
    spanning_selection,
)
from src.semigroup.systems import Potential, SemigroupSystem, Zero
from src.semigroup.words import OmegaWindow, enumerate_words, symbolic_distance

logger = logging.getLogger(__name__)

BOUND_COLUMNS = (
    "N",
    "epsilon",
    "points",
    "multiplicity",
    "log_skew_separated",
    "log_lower_bound",
    "log_decomposed",
    "log_skew_spanning",
    "log_upper_bound",
    "lower_holds",
    "upper_holds",
    "decomposition_holds",
)

# Relative slack for comparing sums that should agree up to rounding
_SLACK = 1e-9


class SkewPoint(NamedTuple):
    window: OmegaWindow
    x: float


@dataclass(frozen=True)
class SkewPotential:
    """g(omega, x) = c + phi_{omega_0}(x)."""

    c: float = 0.0
    phi: Potential | tuple[Potential, ...] = field(default_factory=Zero)

    def fibre_system(self, system: SemigroupSystem) -> SemigroupSystem:
        return system.with_potentials(self.phi)

    def to_dict(self) -> dict[str, Any]:
        phi = [p.to_dict() for p in self.phi] if isinstance(self.phi, tuple) else self.phi.to_dict()
        return {"c": self.c, "phi": phi}


def skew_apply(system: SemigroupSystem, p: SkewPoint) -> SkewPoint:
    """One step of F; the window loses its index-0 symbol to the fibre."""
    if not p.window.covers(0):
        raise ConfigError(f"window [{p.window.first}, {p.window.last}] is exhausted")
    symbol = p.window.symbol(0)
    return SkewPoint(p.window.shift(), float(system.apply_generator(symbol, p.x)))


def skew_orbit(system: SemigroupSystem, p: SkewPoint, n: int) -> list[SkewPoint]:
    orbit = [p]
    for _ in range(n):
        orbit.append(skew_apply(system, orbit[-1]))
    return orbit


def skew_birkhoff_sum(system: SemigroupSystem, g: SkewPotential, p: SkewPoint, n: int) -> float:
    """sum_{k<n} g(F^k (omega, x)), evaluated step by step along F."""
    fibre = g.fibre_system(system)
    total = 0.0
    for point in skew_orbit(system, p, n)[:-1]:
        symbol = point.window.symbol(0)
        total += g.c + float(fibre.potential_value(symbol, point.x))
    return total


def _orbit_distance(
    system: SemigroupSystem, orbit: Sequence[SkewPoint], other: Sequence[SkewPoint], k_max: int
) -> float:
    worst = 0.0
    for a, b in zip(orbit, other, strict=True):
        d_symbolic = symbolic_distance(a.window, b.window, k_max)
        worst = max(worst, d_symbolic, float(system.distance(a.x, b.x)))
    return worst


def skew_distance(system: SemigroupSystem, p: SkewPoint, q: SkewPoint, n: int, k_max: int) -> float:
    """D_n((omega, x), (omega', x')) over the n + 1 states F^0 ... F^n."""
    return _orbit_distance(system, skew_orbit(system, p, n), skew_orbit(system, q, n), k_max)


def window_radius(epsilon: float) -> int:
    """K = floor(log2(1 / eps)): windows differing within K of a state are eps-apart."""
    if not 0 < epsilon <= 0.5:
        raise ConfigError(f"skew scales must lie in (0, 1/2], got {epsilon}", "schedule.epsilons")
    return int(math.floor(math.log2(1.0 / epsilon) + 1e-12))


def symbolic_multiplicity(m: int, epsilon: float, one_sided: bool = False) -> int:
    """Window classes per fibre word: m**(2K + 1), or m**(K + 1) for one-sided sequences."""
    k = window_radius(epsilon)
    return m ** (k + 1) if one_sided else m ** (2 * k + 1)


def sensitive_indices(system: SemigroupSystem, epsilon: float, one_sided: bool = False) -> tuple[int, ...]:
    """
    Sequence indices whose symbol moves F^0, F^1 at least epsilon apart.

    A constant window is compared with copies that differ in one symbol, over a
    range at least one index wider on each side than the scale can reach.
    """
    window_radius(epsilon)
    if system.m < 2:
        return (0, 1)
    reach = math.ceil(math.log2(1.0 / epsilon)) + 1
    first = 0 if one_sided else -reach
    length = 2 + reach - first
    base = SkewPoint(OmegaWindow(first, (0,) * length), 0.0)
    hits = []
    for offset in range(length):
        symbols = tuple(1 if j == offset else 0 for j in range(length))
        flipped = SkewPoint(OmegaWindow(first, symbols), 0.0)
        if skew_distance(system, base, flipped, 1, reach) >= epsilon:
            hits.append(first + offset)
    return tuple(hits)


def measured_multiplicity(system: SemigroupSystem, epsilon: float, one_sided: bool = False) -> int:
    """Window classes per fibre word, counted from the sensitive indices; index 0 is the word."""
    return system.m ** (len(sensitive_indices(system, epsilon, one_sided)) - 1)


def _check_cloud(cloud: SampleCloud, points: int) -> SampleCloud:
    if len(cloud) <= points:
        return cloud
    positions = np.linspace(0, len(cloud) - 1, points).round().astype(np.int64)
    return cloud.subset(cloud.order[positions])


def skew_partition_sums(
    system: SemigroupSystem,
    g: SkewPotential,
    cloud: SampleCloud,
    n: int,
    epsilon: float,
    one_sided: bool = False,
    budget: int = SKEW_CHECK_BUDGET,
) -> tuple[float, float]:
    """
    log separated and log spanning sums of exp(S_n g) computed on Sigma_m x cloud.

    Every symbol string on the sensitive range is paired with every cloud
    point; pairwise distances come from ``skew_distance`` along F^0 ... F^n and
    the same greedy selections as the fibre sums run on the product.

    Args:
        system: Maps generating the fibre action
        g: Skew potential c + phi
        cloud: Fibre points; keep it small
        n: Orbit length
        epsilon: Separation scale in (0, 1/2]
        one_sided: Use one-sided sequences
        budget: Largest number of product points

    Returns:
        (log separated sum, log spanning sum); the spanning sum is the smaller of
        the greedy cover and the maximal separated set

    Raises:
        BudgetExceededError: If the product holds more than ``budget`` points
    """
    indices = sensitive_indices(system, epsilon, one_sided)
    radius = max(max(indices) - 1, -min(indices), 0)
    first = 0 if one_sided else -radius
    length = n + radius - first + 1
    size = system.m**length * len(cloud)
    if size > budget:
        raise BudgetExceededError(f"{size} product points exceed the budget of {budget}")
    points = [
        SkewPoint(OmegaWindow(first, symbols), float(x))
        for symbols in itertools.product(range(system.m), repeat=length)
        for x in cloud.sorted_points
    ]
    orbits = [skew_orbit(system, p, n) for p in points]
    weights = np.array([skew_birkhoff_sum(system, g, p, n) for p in points])
    close = np.eye(size, dtype=bool)
    for i, j in itertools.combinations(range(size), 2):
        if _orbit_distance(system, orbits[i], orbits[j], radius) < epsilon:
            close[i, j] = close[j, i] = True
    balls = DenseNeighbourhoods(close)
    log_separated = float(logsumexp(weights[greedy_separated(balls, weights)]))
    log_cover = float(logsumexp(weights[greedy_cover(balls, weights)]))
    return log_separated, min(log_cover, log_separated)


class BoundRow(NamedTuple):
    n: int
    epsilon: float
    points: int
    multiplicity: int
    log_skew_separated: float
    log_lower_bound: float
    log_decomposed: float
    log_skew_spanning: float
    log_upper_bound: float
    lower_holds: bool
    upper_holds: bool
    decomposition_holds: bool

    @property
    def holds(self) -> bool:
        return self.lower_holds and self.upper_holds and self.decomposition_holds

    def to_row(self) -> dict[str, Any]:
        return dict(zip(BOUND_COLUMNS, self, strict=True))


def _fibre_logs(fibre: SemigroupSystem, cloud: SampleCloud, n: int, epsilon: float) -> tuple[float, float]:
    """log sum over words of the fibre separated sums and of the fibre cover sums."""
    separated, covers = [], []
    for w in enumerate_words(fibre.alphabet, n):
        sums = sorted_birkhoff_sums(fibre, w, cloud)
        separated.append(logsumexp(sums[separated_selection(fibre, w, cloud, epsilon, sums)]))
        covers.append(logsumexp(sums[spanning_selection(fibre, w, cloud, epsilon, sums)]))
    return float(logsumexp(separated)), float(logsumexp(covers))


def skew_bound_rows(
    system: SemigroupSystem,
    g: SkewPotential,
    cloud: SampleCloud,
    word_lengths: Sequence[int] = SKEW_CHECK_LENGTHS,
    epsilons: Sequence[float] = SKEW_CHECK_EPSILONS,
    one_sided: bool = False,
    points: int = SKEW_CHECK_POINTS,
    budget: int = SKEW_CHECK_BUDGET,
) -> tuple[BoundRow, ...]:
    """
    Compare direct product sums with the fibre bounds on a few cloud points.

    Per cell, with L = n c + log sum_w P_w and U = log mult + n c + log sum_w Q_w:
    the direct separated sum must be at least L, the direct spanning sum at most
    U, and the direct separated sum must equal log mult + L. Cells whose
    product exceeds ``budget`` points are skipped.
    """
    fibre = g.fibre_system(system)
    sub = _check_cloud(cloud, points)
    rows = []
    for epsilon in epsilons:
        multiplicity = measured_multiplicity(system, epsilon, one_sided)
        log_mult = math.log(multiplicity)
        for n in word_lengths:
            try:
                log_sep, log_span = skew_partition_sums(system, g, sub, n, epsilon, one_sided, budget)
            except BudgetExceededError:
                logger.debug("skipping direct skew sums at n=%d eps=%g", n, epsilon)
                continue
            words_sep, words_cover = _fibre_logs(fibre, sub, n, epsilon)
            lower = n * g.c + words_sep
            decomposed = log_mult + lower
            upper = log_mult + n * g.c + min(words_cover, words_sep)
            slack = _SLACK * max(1.0, abs(decomposed))
            rows.append(
                BoundRow(
                    n,
                    epsilon,
                    len(sub),
                    multiplicity,
                    log_sep,
                    lower,
                    decomposed,
                    log_span,
                    upper,
                    log_sep >= lower - slack,
                    log_span <= upper + slack,
                    abs(log_sep - decomposed) <= slack,
                )
            )
    return tuple(rows)


@dataclass(frozen=True)
class SkewPressure:
    estimate: PressureEstimate
    multiplicities: tuple[tuple[float, int], ...]
    one_sided: bool


def skew_capacity_pressure(
    system: SemigroupSystem,
    g: SkewPotential,
    cloud: SampleCloud,
    schedule: Schedule,
    one_sided: bool = False,
    threads: int | None = None,
) -> SkewPressure:
    """
    Upper capacity pressure of F on Sigma_m x Z for g = c + phi.

    Each cell is the measured class count times the fibre separated sums.
    """
    fibre = g.fibre_system(system)
    m = system.m
    cells: list[PartitionCell] = []
    multiplicities = []
    mode = "exhaustive"
    for epsilon in schedule.epsilons:
        multiplicity = measured_multiplicity(system, epsilon, one_sided)
        multiplicities.append((epsilon, multiplicity))
        log_mult = math.log(multiplicity)
        for n in schedule.word_lengths:
            separated = averaged_partition(fibre, cloud, n, epsilon, schedule, "separated", threads)
            if separated.mode == "monte_carlo":
                mode = "monte_carlo"
            cells.append(
                PartitionCell(
                    "skew",
                    n,
                    epsilon,
                    separated.n_words,
                    n * g.c + n * math.log(m) + log_mult + separated.log_value,
                    separated.stderr,
                    cell_resolved(fibre, cloud, n, epsilon),
                )
            )
    estimate = estimate_from_cells(cells, schedule, mode)
    logger.info("skew pressure (c=%g, one_sided=%s) = %.6f", g.c, one_sided, estimate.value)
    return SkewPressure(estimate, tuple(multiplicities), one_sided)


@dataclass(frozen=True)
class IdentityCheck:
    """Skew pressure against log m + fibre pressure + c."""

    left: float
    right: float
    fibre_pressure: float
    log_m: float
    c: float
    tol: float
    passed: bool
    bounds: tuple[BoundRow, ...]
    flags: frozenset[Flag] = frozenset()

    @property
    def bounds_hold(self) -> bool:
        return bool(self.bounds) and all(row.holds for row in self.bounds)

    def to_dict(self) -> dict[str, Any]:
        return {
            "left": self.left,
            "right": self.right,
            "fibre_pressure": self.fibre_pressure,
            "log_m": self.log_m,
            "c": self.c,
            "tol": self.tol,
            "passed": self.passed,
            "bounds_hold": self.bounds_hold,
            "bounds_checked": len(self.bounds),
            "flags": sorted(str(f) for f in self.flags),
        }


def verify_pressure_identity(
    system: SemigroupSystem,
    phi: Potential | Sequence[Potential],
    c: float,
    cloud: SampleCloud,
    schedule: Schedule,
    tol: float = 0.1,
    one_sided: bool = False,
    threads: int | None = None,
) -> IdentityCheck:
    """Check |CP(F, c + phi) - (log m + CP_Z(G, phi) + c)| <= tol and the direct-sum bounds."""
    potential = phi if isinstance(phi, Potential) else tuple(phi)
    g = SkewPotential(c, potential)
    skew = skew_capacity_pressure(system, g, cloud, schedule, one_sided, threads)
    fibre = capacity_pressure(g.fibre_system(system), cloud, schedule, threads=threads)
    bounds = skew_bound_rows(system, g, cloud, one_sided=one_sided)
    log_m = math.log(system.m)
    right = log_m + fibre.value + c
    check = IdentityCheck(
        left=skew.estimate.value,
        right=right,
        fibre_pressure=fibre.value,
        log_m=log_m,
        c=c,
        tol=tol,
        passed=False,
        bounds=bounds,
        flags=skew.estimate.flags | fibre.flags,
    )
    passed = abs(check.left - right) <= tol and check.bounds_hold
    logger.info("skew identity: %.6f vs %.6f (%s)", check.left, right, passed)
    return replace(check, passed=passed)
