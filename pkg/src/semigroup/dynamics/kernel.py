"""
Orbit segments, Birkhoff sums and Bowen metrics along words.

Orbits apply the first symbol of a word first, so the segment of x under
``w = i_1 ... i_n`` is ``[x, f_{i_1} x, f_{i_2} f_{i_1} x, ...]`` with |w| + 1
points. The Bowen distance compares all of them, the starting point included,
and Bowen balls are closed.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from typing import Any, NamedTuple

import numpy as np

from src.semigroup.systems import SemigroupSystem
from src.semigroup.words import Word


class OrbitSegment(NamedTuple):
    word: Word
    points: tuple[float, ...]

    @property
    def end(self) -> float:
        return self.points[-1]


def orbit_matrix(system: SemigroupSystem, w: Word | Sequence[int], points: Any) -> np.ndarray:
    """Orbit of every point under w, shape (|w| + 1, len(points))."""
    symbols = tuple(w)
    current = np.atleast_1d(np.asarray(points, dtype=float))
    rows = np.empty((len(symbols) + 1, current.size), dtype=float)
    rows[0] = current
    for k, i in enumerate(symbols):
        current = np.asarray(system.apply_generator(i, current), dtype=float)
        rows[k + 1] = current
    return rows


def orbit_segment(system: SemigroupSystem, w: Word, x: float) -> OrbitSegment:
    rows = orbit_matrix(system, w, [x])
    return OrbitSegment(w, tuple(float(v) for v in rows[:, 0]))


def birkhoff_sums(
    system: SemigroupSystem,
    w: Word | Sequence[int],
    points: Any,
    orbit: np.ndarray | None = None,
) -> np.ndarray:
    """S_w Phi at every point; ``orbit`` may be passed in to avoid recomputing it."""
    symbols = tuple(w)
    rows = orbit_matrix(system, symbols, points) if orbit is None else orbit
    total = np.zeros(rows.shape[1], dtype=float)
    for k, i in enumerate(symbols):
        total += np.asarray(system.potential_value(i, rows[k]), dtype=float)
    return total


def birkhoff_sum(system: SemigroupSystem, w: Word, x: float) -> float:
    return float(birkhoff_sums(system, w, [x])[0])


def log_factor_sums(
    system: SemigroupSystem, w: Word | Sequence[int], points: Any, orbit: np.ndarray | None = None
) -> np.ndarray:
    """S_w(log a) at every point, independent of the system's potentials."""
    symbols = tuple(w)
    rows = orbit_matrix(system, symbols, points) if orbit is None else orbit
    total = np.zeros(rows.shape[1], dtype=float)
    for k, i in enumerate(symbols):
        total += np.log(np.asarray(system.factor(i, rows[k]), dtype=float))
    return total


def orbit_distances(system: SemigroupSystem, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Bowen distance between matching columns of two orbit matrices."""
    return np.max(system.distance(left, right), axis=0)


def bowen_distance(system: SemigroupSystem, w: Word, x: float, y: float) -> float:
    rows = orbit_matrix(system, w, [x, y])
    return float(np.max(system.distance(rows[:, 0], rows[:, 1])))


def in_bowen_ball(system: SemigroupSystem, w: Word, x: float, delta: float, y: float) -> bool:
    return bowen_distance(system, w, x, y) <= delta


def bowen_distance_matrix(system: SemigroupSystem, w: Word, points: Any) -> np.ndarray:
    """Pairwise d_w on a small point set, shape (P, P)."""
    rows = orbit_matrix(system, w, points)
    matrix = np.zeros((rows.shape[1], rows.shape[1]), dtype=float)
    for k in range(rows.shape[0]):
        np.maximum(matrix, system.distance(rows[k][:, None], rows[k][None, :]), out=matrix)
    return matrix


def lyapunov_word(system: SemigroupSystem, w: Word, x: float) -> float:
    """lambda_w(x) = S_w(log a)(x) / |w|."""
    return float(log_factor_sums(system, w, [x])[0]) / len(w)


def lyapunov_ball_radii(
    system: SemigroupSystem, w: Word, x: float, delta: float, epsilon: float
) -> tuple[float, float]:
    """
    Radii delta * exp(-|w| (lambda_w(x) +/- epsilon)).

    For small delta the Bowen ball B_w(x, delta) contains the base ball of the
    inner radius and sits inside the base ball of the outer radius.
    """
    n = len(w)
    rate = lyapunov_word(system, w, x)
    return delta * math.exp(-n * (rate + epsilon)), delta * math.exp(-n * (rate - epsilon))
