"""
Word-length and scale schedules for the pressure limits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from src.semigroup.errors import ConfigError
from src.semigroup.numerics_config import MC_SAMPLES, WORD_BUDGET


@dataclass(frozen=True)
class Schedule:
    word_lengths: tuple[int, ...]
    epsilons: tuple[float, ...]
    word_budget: int = WORD_BUDGET
    mc_samples: int = MC_SAMPLES
    seed: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "word_lengths", tuple(int(n) for n in self.word_lengths))
        object.__setattr__(self, "epsilons", tuple(float(e) for e in self.epsilons))
        if not self.word_lengths:
            raise ConfigError("at least one word length is required", "schedule.word_lengths")
        if any(n < 2 for n in self.word_lengths):
            raise ConfigError("word lengths must be at least 2", "schedule.word_lengths")
        if list(self.word_lengths) != sorted(set(self.word_lengths)):
            raise ConfigError("word lengths must be strictly ascending", "schedule.word_lengths")
        if not self.epsilons:
            raise ConfigError("at least one epsilon is required", "schedule.epsilons")
        if any(not e > 0 for e in self.epsilons):
            raise ConfigError("epsilons must be positive", "schedule.epsilons")
        if list(self.epsilons) != sorted(set(self.epsilons), reverse=True):
            raise ConfigError("epsilons must be strictly descending", "schedule.epsilons")
        if self.word_budget < 1:
            raise ConfigError("word budget must be positive", "schedule.word_budget")
        if self.mc_samples < 2:
            raise ConfigError("at least two Monte-Carlo samples are required", "schedule.mc_samples")

    @property
    def smallest_epsilon(self) -> float:
        return self.epsilons[-1]

    def exhaustive(self, m: int, n: int) -> bool:
        return m**n <= self.word_budget

    def needs_seed(self, m: int) -> bool:
        return not self.exhaustive(m, max(self.word_lengths))

    def require_seed(self) -> int:
        if self.seed is None:
            raise ConfigError("a seed is required for sampled word averages", "schedule.seed")
        return self.seed

    def to_dict(self) -> dict[str, Any]:
        return {
            "word_lengths": list(self.word_lengths),
            "epsilons": list(self.epsilons),
            "word_budget": self.word_budget,
            "mc_samples": self.mc_samples,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Schedule:
        return cls(
            word_lengths=tuple(data["word_lengths"]),
            epsilons=tuple(data["epsilons"]),
            word_budget=int(data.get("word_budget", WORD_BUDGET)),
            mc_samples=int(data.get("mc_samples", MC_SAMPLES)),
            seed=None if data.get("seed") is None else int(data["seed"]),
        )
