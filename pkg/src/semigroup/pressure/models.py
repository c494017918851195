"""
Result types for pressure estimates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, NamedTuple

from src.semigroup.errors import Flag

CELL_COLUMNS = ("variant", "N", "epsilon", "n_words", "log_avg_sum", "stderr")


class AveragedSum(NamedTuple):
    """log of the word-averaged partition sum at one (n, epsilon)."""

    log_value: float
    stderr: float
    n_words: int
    mode: str


@dataclass(frozen=True)
class PartitionCell:
    variant: str
    n: int
    epsilon: float
    n_words: int
    log_avg_sum: float
    stderr: float
    resolved: bool = True

    def to_row(self) -> dict[str, Any]:
        return {
            "variant": self.variant,
            "N": self.n,
            "epsilon": self.epsilon,
            "n_words": self.n_words,
            "log_avg_sum": self.log_avg_sum,
            "stderr": self.stderr,
        }


@dataclass(frozen=True)
class SlopeFit:
    """Least-squares fit of log-average sum against N at one epsilon."""

    epsilon: float
    slope: float
    intercept: float
    residual: float
    successive_slopes: tuple[float, ...]
    resolved: bool = True


@dataclass(frozen=True)
class PressureEstimate:
    value: float
    per_cell: tuple[PartitionCell, ...]
    slope_fits: tuple[SlopeFit, ...]
    mode: str
    flags: frozenset[Flag] = frozenset()
    lower: float = float("nan")
    upper: float = float("nan")
    diagnostics: dict[str, Any] = field(default_factory=dict)

    def fit_at(self, epsilon: float) -> SlopeFit:
        for fit in self.slope_fits:
            if fit.epsilon == epsilon:
                return fit
        raise KeyError(epsilon)

    @property
    def spread(self) -> float:
        return self.upper - self.lower

    def to_dict(self) -> dict[str, Any]:
        return {
            "value": self.value,
            "lower": self.lower,
            "upper": self.upper,
            "mode": self.mode,
            "flags": sorted(str(f) for f in self.flags),
            "slope_fits": [
                {
                    "epsilon": fit.epsilon,
                    "slope": fit.slope,
                    "intercept": fit.intercept,
                    "residual": fit.residual,
                    "resolved": fit.resolved,
                }
                for fit in self.slope_fits
            ],
            "diagnostics": dict(self.diagnostics),
        }


class CellSandwich(NamedTuple):
    """Spanning/separated comparison at one (word, epsilon), in logs."""

    n: int
    epsilon: float
    log_spanning: float
    log_separated: float
    log_spanning_half: float
    modulus: float
    lower_holds: bool
    upper_holds: bool
