"""
Bowen's equation P_Z(G, -t log a) = 0 and the pressure-in-t checks around it.
"""

from __future__ import annotations

import itertools
import logging
import math
import warnings
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any, NamedTuple

from src.semigroup.bowen.dimension import box_counting_dimension, moran_dimension
from src.semigroup.errors import (
    ConfigError,
    Flag,
    NonExpandingError,
    NonExpandingWarning,
    NonMonotoneError,
    NumericalAbort,
)
from src.semigroup.numerics_config import (
    BRACKET_SLACK_FACTOR,
    MAX_BISECTION_STEPS,
    P_TOL,
    T_TOL,
    TRACE_MONOTONE_TOLERANCE,
)
from src.semigroup.pressure import PressureEstimate, Schedule, capacity_pressure, entropy
from src.semigroup.sets import SampleCloud
from src.semigroup.systems import SemigroupSystem, geometric_system

logger = logging.getLogger(__name__)

TRACE_COLUMNS = ("t", "pressure")


@dataclass(frozen=True)
class BowenResult:
    t_star: float
    bracket: tuple[float, float]
    pressure_trace: tuple[tuple[float, float], ...]
    entropy: float
    alpha: float
    beta: float
    dim_box: float | None = None
    dim_moran: float | None = None
    flags: frozenset[Flag] = frozenset()
    stopped_on: str = "width"
    diagnostics: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "t_star": self.t_star,
            "bracket": list(self.bracket),
            "entropy": self.entropy,
            "alpha": self.alpha,
            "beta": self.beta,
            "dim_box": self.dim_box,
            "dim_moran": self.dim_moran,
            "flags": sorted(str(f) for f in self.flags),
            "stopped_on": self.stopped_on,
            "diagnostics": dict(self.diagnostics),
        }


class SlopeCheck(NamedTuple):
    """P(t + step) against the band [P(t) - beta step, P(t) - alpha step]."""

    t: float
    step: float
    pressure_t: float
    pressure_next: float
    lower_bound: float
    upper_bound: float
    passed: bool


class LinearityRow(NamedTuple):
    t: float
    pressure: float
    expected: float
    passed: bool


def pressure_estimate_at_t(
    system: SemigroupSystem,
    cloud: SampleCloud,
    t: float,
    schedule: Schedule,
    variant: str = "separated",
    threads: int | None = None,
) -> PressureEstimate:
    if t < 0:
        raise ConfigError(f"t must be non-negative, got {t}", "commands.bowen.t")
    return capacity_pressure(geometric_system(system, t), cloud, schedule, variant, threads)


def pressure_at_t(
    system: SemigroupSystem,
    cloud: SampleCloud,
    t: float,
    schedule: Schedule,
    variant: str = "separated",
    threads: int | None = None,
) -> float:
    """Capacity pressure of the potentials -t log a_i."""
    return pressure_estimate_at_t(system, cloud, t, schedule, variant, threads).value


def lyapunov_bounds_on_cloud(system: SemigroupSystem, cloud: SampleCloud) -> tuple[float, float]:
    """
    (min_i inf log a_i, max_i sup log a_i) over the cloud points.

    Warns with NonExpandingWarning when the lower bound is not positive.
    """
    alpha, beta = system.log_factor_bounds(cloud.points)
    if alpha <= 0:
        warnings.warn(
            f"{Flag.WARN_NONEXPANDING}: log a reaches {alpha:.3g} on the cloud",
            NonExpandingWarning,
            stacklevel=2,
        )
    return alpha, beta


def dimension_equal_exponent(h: float, alpha: float) -> float:
    """t* = h / alpha for Z inside A(alpha)."""
    if not alpha > 0:
        raise ConfigError(f"the exponent must be positive, got {alpha}")
    return h / alpha


def bowen_root(
    system: SemigroupSystem,
    cloud: SampleCloud,
    schedule: Schedule,
    t_tol: float = T_TOL,
    p_tol: float = P_TOL,
    variant: str = "separated",
    threads: int | None = None,
    box_scales: Sequence[float] | None = None,
    moran_ratios: Sequence[float] | None = None,
) -> BowenResult:
    """
    Root t* of t -> P_Z(G, -t log a) by bisection.

    The search starts from [h/beta, h/alpha] widened by BRACKET_SLACK_FACTOR
    t_tol on each side, with h the entropy of the cloud and (alpha, beta) the
    log-factor bounds on it. Bisection stops once |P| <= p_tol or the bracket
    is narrower than t_tol.

    Raises:
        NonExpandingError: If alpha <= 0 on the cloud
        NumericalAbort: If P does not change sign over the starting bracket
        NonMonotoneError: If the pressure trace is not decreasing in t
    """
    if t_tol <= 0 or p_tol <= 0:
        raise ConfigError("t_tol and p_tol must be positive", "commands.bowen")
    alpha, beta = lyapunov_bounds_on_cloud(system, cloud)
    if alpha <= 0:
        raise NonExpandingError(f"log a reaches {alpha:.3g} on the cloud; Bowen's equation is not applicable")
    h = entropy(system, cloud, schedule, variant, threads).value
    slack = BRACKET_SLACK_FACTOR * t_tol
    bracket = (max(0.0, h / beta - slack), h / alpha + slack)
    flags: set[Flag] = set()
    trace: dict[float, float] = {}

    def evaluate(t: float) -> float:
        estimate = pressure_estimate_at_t(system, cloud, t, schedule, variant, threads)
        flags.update(estimate.flags)
        trace[t] = estimate.value
        logger.debug("P(%.6f) = %.6f", t, estimate.value)
        return estimate.value

    lo, hi = bracket
    p_lo, p_hi = evaluate(lo), evaluate(hi)
    if not p_lo >= 0 >= p_hi:
        raise NumericalAbort(
            f"P does not change sign on [{lo:.4f}, {hi:.4f}]: P = ({p_lo:.4f}, {p_hi:.4f})"
        )
    t_star = lo if p_lo == 0 else hi if p_hi == 0 else math.nan
    stopped_on = "pressure" if not math.isnan(t_star) else "width"
    steps = 0
    while math.isnan(t_star) and hi - lo > t_tol and steps < MAX_BISECTION_STEPS:
        mid = 0.5 * (lo + hi)
        p_mid = evaluate(mid)
        if abs(p_mid) <= p_tol:
            t_star, stopped_on = mid, "pressure"
        elif p_mid > 0:
            lo, p_lo = mid, p_mid
        else:
            hi, p_hi = mid, p_mid
        steps += 1
    if math.isnan(t_star):
        # secant through the final bracket
        t_star = lo + (hi - lo) * p_lo / (p_lo - p_hi) if p_lo != p_hi else 0.5 * (lo + hi)

    ordered = tuple(sorted(trace.items()))
    result = BowenResult(
        t_star=t_star,
        bracket=bracket,
        pressure_trace=ordered,
        entropy=h,
        alpha=alpha,
        beta=beta,
        dim_box=None if box_scales is None else box_counting_dimension(cloud, box_scales),
        dim_moran=None if moran_ratios is None else moran_dimension(moran_ratios),
        flags=frozenset(flags | ({Flag.PROXY} if box_scales is not None else set())),
        stopped_on=stopped_on,
        diagnostics={"steps": steps, "final_bracket": [lo, hi]},
    )
    for (t0, p0), (t1, p1) in itertools.pairwise(ordered):
        if p1 > p0 + TRACE_MONOTONE_TOLERANCE:
            raise NonMonotoneError(f"P({t1:.4f}) = {p1:.4f} exceeds P({t0:.4f}) = {p0:.4f}", result)
    logger.info("Bowen root t* = %.6f in [%.4f, %.4f] (h=%.6f)", t_star, *bracket, h)
    return result


def pressure_slope_check(
    system: SemigroupSystem,
    cloud: SampleCloud,
    schedule: Schedule,
    t: float,
    h_step: float,
    tol: float = TRACE_MONOTONE_TOLERANCE,
    threads: int | None = None,
) -> SlopeCheck:
    """Check P(t) - beta h - tol <= P(t + h) <= P(t) - alpha h + tol."""
    if h_step < 0:
        raise ConfigError("the step must be non-negative", "commands.bowen.h_step")
    alpha, beta = lyapunov_bounds_on_cloud(system, cloud)
    p_t = pressure_at_t(system, cloud, t, schedule, threads=threads)
    p_next = p_t if h_step == 0 else pressure_at_t(system, cloud, t + h_step, schedule, threads=threads)
    lower = p_t - beta * h_step - tol
    upper = p_t - alpha * h_step + tol
    return SlopeCheck(t, h_step, p_t, p_next, lower, upper, lower <= p_next <= upper)


def exponent_linearity_check(
    system: SemigroupSystem,
    cloud: SampleCloud,
    schedule: Schedule,
    ts: Sequence[float],
    alpha: float,
    tol: float = 0.05,
    threads: int | None = None,
) -> list[LinearityRow]:
    """For Z inside A(alpha): P(-t log a) = h - t alpha at every t."""
    h = entropy(system, cloud, schedule, threads=threads).value
    rows = []
    for t in ts:
        p = pressure_at_t(system, cloud, t, schedule, threads=threads)
        expected = h - t * alpha
        rows.append(LinearityRow(float(t), p, expected, abs(p - expected) <= tol))
    return rows
