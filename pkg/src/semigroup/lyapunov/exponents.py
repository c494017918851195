"""
Finite-horizon Lyapunov envelopes and the tempered-contraction margin.

Both quantities are functions of the prefix sums s_k = S_{w|k}(log a)(x) along
every word w up to the horizon, so they share one breadth-first pass over the
word tree. Levels with more than ``word_budget`` words switch to seeded random
words, whose prefixes serve every remaining level.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator
from dataclasses import dataclass, field
from typing import Any, NamedTuple

import numpy as np

from src.semigroup.errors import ConfigError
from src.semigroup.numerics_config import (
    LYAPUNOV_TAU,
    MC_SAMPLES,
    TEMPERED_EPSILON,
    TEMPERED_M_CAP,
    WORD_BUDGET,
)
from src.semigroup.systems import FamilyCertificate, SemigroupSystem, certify_family
from src.semigroup.words import sample_words, words_array

logger = logging.getLogger(__name__)


class _Level(NamedTuple):
    n: int
    sums: np.ndarray
    peaks: np.ndarray
    mode: str


def _prefix_levels(
    system: SemigroupSystem,
    x: float,
    n_max: int,
    word_budget: int,
    samples: int,
    seed: int | None,
) -> Iterator[_Level]:
    """Prefix log-factor sums s_n and running maxima max_{k<=n} s_k, one level at a time."""
    points = np.array([float(x)])
    sums = np.zeros(1)
    peaks = np.zeros(1)
    n = 0
    while n < n_max and system.m ** (n + 1) <= word_budget:
        branches = [
            (
                np.asarray(system.apply_generator(i, points), dtype=float),
                sums + np.log(np.asarray(system.factor(i, points), dtype=float)),
            )
            for i in range(system.m)
        ]
        points = np.concatenate([b[0] for b in branches])
        sums = np.concatenate([b[1] for b in branches])
        peaks = np.maximum(np.tile(peaks, system.m), sums)
        n += 1
        yield _Level(n, sums, peaks, "exhaustive")
    if n == n_max:
        return
    if seed is None:
        raise ConfigError(
            f"{system.m}^{n + 1} words exceed the budget {word_budget}; a seed is required",
            "schedule.seed",
        )
    symbols = words_array(sample_words(system.alphabet, n_max, samples, seed))
    points = np.full(samples, float(x))
    sums = np.zeros(samples)
    peaks = np.zeros(samples)
    for k in range(n_max):
        column = symbols[:, k]
        advanced = np.empty_like(points)
        for i in range(system.m):
            rows = column == i
            if not rows.any():
                continue
            sums[rows] += np.log(np.asarray(system.factor(i, points[rows]), dtype=float))
            advanced[rows] = system.apply_generator(i, points[rows])
        points = advanced
        peaks = np.maximum(peaks, sums)
        if k + 1 > n:
            yield _Level(k + 1, sums.copy(), peaks.copy(), "monte_carlo")


@dataclass(frozen=True)
class LyapunovReport:
    """Word Lyapunov extremes at one point, with finite-horizon membership surrogates."""

    x: float
    n_max: int
    min_over_words: tuple[float, ...]
    max_over_words: tuple[float, ...]
    modes: tuple[str, ...]
    tempered_margins: dict[float, float] = field(default_factory=dict)
    tau: float = LYAPUNOV_TAU
    m_cap: float = TEMPERED_M_CAP
    in_A_positive: bool = False
    in_A_interval: bool | None = None
    interval: tuple[float, float] | None = None
    in_B: bool | None = None
    certificate: FamilyCertificate | None = None

    @property
    def lower(self) -> float:
        return self.min_over_words[-1]

    @property
    def upper(self) -> float:
        return self.max_over_words[-1]

    def rows(self) -> list[dict[str, Any]]:
        return [
            {"n": n, "min_lambda": lo, "max_lambda": hi, "mode": mode}
            for n, lo, hi, mode in zip(
                range(1, self.n_max + 1),
                self.min_over_words,
                self.max_over_words,
                self.modes,
                strict=True,
            )
        ]

    def to_dict(self) -> dict[str, Any]:
        return {
            "x": self.x,
            "n_max": self.n_max,
            "lower": self.lower,
            "upper": self.upper,
            "tau": self.tau,
            "m_cap": self.m_cap,
            "in_A_positive": self.in_A_positive,
            "in_A_interval": self.in_A_interval,
            "interval": None if self.interval is None else list(self.interval),
            "in_B": self.in_B,
            "tempered_margins": {str(k): v for k, v in self.tempered_margins.items()},
            "certificate": None if self.certificate is None else self.certificate.description,
        }


def lyapunov_envelope(
    system: SemigroupSystem,
    x: float,
    n_max: int,
    word_budget: int = WORD_BUDGET,
    seed: int | None = None,
    samples: int = MC_SAMPLES,
    tau: float = LYAPUNOV_TAU,
) -> LyapunovReport:
    """
    min and max of lambda_w(x) over all words of each length n <= n_max.

    Args:
        system: The generators; potentials are ignored
        x: Base point
        n_max: Horizon
        word_budget: Largest level enumerated exhaustively
        seed: Needed once a level exceeds the budget
        samples: Random words used beyond the budget
        tau: Threshold for the in_A_positive surrogate

    Returns:
        Report with per-length extremes and ``in_A_positive = min at n_max > tau``
    """
    if n_max < 1:
        raise ConfigError("the horizon must be at least 1", "commands.lyapunov.n_max")
    lows, highs, modes = [], [], []
    for level in _prefix_levels(system, x, n_max, word_budget, samples, seed):
        rates = level.sums / level.n
        lows.append(float(rates.min()))
        highs.append(float(rates.max()))
        modes.append(level.mode)
    report = LyapunovReport(
        x=float(x),
        n_max=n_max,
        min_over_words=tuple(lows),
        max_over_words=tuple(highs),
        modes=tuple(modes),
        tau=tau,
        in_A_positive=lows[-1] > tau,
    )
    logger.debug("lyapunov envelope at x=%g: [%.6f, %.6f]", x, report.lower, report.upper)
    return report


def tempered_margin(
    system: SemigroupSystem,
    x: float,
    epsilon: float,
    n_max: int,
    word_budget: int = WORD_BUDGET,
    seed: int | None = None,
    samples: int = MC_SAMPLES,
) -> tuple[float, tuple[float, ...]]:
    """
    Finite-horizon inf of S_w(log a)(x) - S_{w'}(log a)(x) + |w| epsilon.

    w' runs over the initial segments of w (the empty one included), so the
    inner infimum is s_n - max_{k<=n} s_k.

    Returns:
        The overall minimum and the minimum at each horizon n = 1..n_max
    """
    if epsilon < 0:
        raise ConfigError("epsilon must be non-negative", "commands.lyapunov.epsilon")
    per_horizon = tuple(
        float(np.min(level.sums - level.peaks)) + level.n * epsilon
        for level in _prefix_levels(system, x, n_max, word_budget, samples, seed)
    )
    return min(per_horizon), per_horizon


def bounded_contraction_margin(
    system: SemigroupSystem, x: float, n_max: int, word_budget: int = WORD_BUDGET, seed: int | None = None
) -> float:
    """The tempered margin at epsilon = 0; bounded below means bounded contraction."""
    return tempered_margin(system, x, 0.0, n_max, word_budget, seed)[0]


def classify_point(
    system: SemigroupSystem,
    x: float,
    n_max: int,
    tau: float = LYAPUNOV_TAU,
    interval: tuple[float, float] | None = None,
    epsilons: tuple[float, ...] = (TEMPERED_EPSILON,),
    m_cap: float = TEMPERED_M_CAP,
    word_budget: int = WORD_BUDGET,
    seed: int | None = None,
) -> LyapunovReport:
    """
    Finite-horizon surrogates for membership of x in A((0, inf)), A([alpha, beta]) and B.

    ``in_B`` holds when the tempered margin at the first epsilon stays above
    -m_cap up to the horizon. The family certificate is attached next to the
    surrogates and never overrides them.
    """
    if tau <= 0:
        raise ConfigError("tau must be positive", "commands.classify.tau")
    envelope = lyapunov_envelope(system, x, n_max, word_budget, seed, tau=tau)
    margins = {eps: tempered_margin(system, x, eps, n_max, word_budget, seed)[0] for eps in epsilons}
    in_interval = None
    if interval is not None:
        low, high = interval
        in_interval = envelope.lower >= low - tau and envelope.upper <= high + tau
    report = LyapunovReport(
        x=envelope.x,
        n_max=n_max,
        min_over_words=envelope.min_over_words,
        max_over_words=envelope.max_over_words,
        modes=envelope.modes,
        tempered_margins=margins,
        tau=tau,
        m_cap=m_cap,
        in_A_positive=envelope.in_A_positive,
        in_A_interval=in_interval,
        interval=interval,
        in_B=margins[epsilons[0]] >= -m_cap,
        certificate=certify_family(system),
    )
    logger.info(
        "x=%g horizon=%d: A(0,inf)=%s B=%s (%s)",
        x,
        n_max,
        report.in_A_positive,
        report.in_B,
        report.certificate.description if report.certificate else "uncertified",
    )
    return report
