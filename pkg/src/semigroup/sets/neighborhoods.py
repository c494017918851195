"""
Bowen neighbourhoods of every cloud point for one word and scale.

When ``epsilon * max factor`` stays below ``ARC_FACTOR_BOUND`` every Bowen ball
of an expanding circle or interval map is an arc around its centre, so the
neighbourhood of a point is a contiguous run of the sorted cloud. The run ends
are found by bisecting over index lags, vectorised across all points. Outside
that regime small clouds fall back to a dense pairwise matrix.

All indices here refer to the cloud's sorted order.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator

import numpy as np

from src.semigroup.dynamics import orbit_matrix
from src.semigroup.errors import BudgetExceededError
from src.semigroup.numerics_config import ARC_FACTOR_BOUND, DENSE_PAIRWISE_LIMIT
from src.semigroup.parallel import BoundedCache
from src.semigroup.sets.regions import SampleCloud
from src.semigroup.systems import MetricMode, SemigroupSystem
from src.semigroup.words import Word

logger = logging.getLogger(__name__)


class Neighbourhoods:
    """Who lies within the Bowen scale of whom, for one (word, epsilon)."""

    size: int

    def members(self, i: int) -> np.ndarray:
        raise NotImplementedError

    def sizes(self) -> np.ndarray:
        raise NotImplementedError

    def mark(self, i: int, mask: np.ndarray) -> None:
        mask[self.members(i)] = True

    def count_unmarked(self, i: int, mask: np.ndarray) -> int:
        return int(np.count_nonzero(~mask[self.members(i)]))

    def range_max(self, values: np.ndarray) -> np.ndarray:
        raise NotImplementedError


class ArcNeighbourhoods(Neighbourhoods):
    def __init__(self, left: np.ndarray, right: np.ndarray, circular: bool) -> None:
        self.left = left
        self.right = right
        self.circular = circular
        self.size = int(left.size)

    def _slices(self, i: int) -> Iterator[slice]:
        lo = i - int(self.left[i])
        hi = i + int(self.right[i]) + 1
        if not self.circular or (lo >= 0 and hi <= self.size):
            yield slice(max(lo, 0), min(hi, self.size))
            return
        if hi - lo >= self.size:
            yield slice(0, self.size)
            return
        if lo < 0:
            yield slice(lo + self.size, self.size)
            yield slice(0, hi)
        else:
            yield slice(lo, self.size)
            yield slice(0, hi - self.size)

    def members(self, i: int) -> np.ndarray:
        return np.concatenate([np.arange(s.start, s.stop) for s in self._slices(i)])

    def sizes(self) -> np.ndarray:
        return np.minimum(self.left.astype(np.int64) + self.right + 1, self.size)

    def mark(self, i: int, mask: np.ndarray) -> None:
        for s in self._slices(i):
            mask[s] = True

    def count_unmarked(self, i: int, mask: np.ndarray) -> int:
        return sum(int(s.stop - s.start - np.count_nonzero(mask[s])) for s in self._slices(i))

    def range_max(self, values: np.ndarray) -> np.ndarray:
        """Max of ``values`` over every neighbourhood, via a sparse table."""
        n = self.size
        if self.circular:
            extended = np.concatenate((values, values, values))
            offset = n
        else:
            extended = values
            offset = 0
        lo = np.arange(n) - self.left + offset
        hi = np.arange(n) + self.right + offset
        if self.circular:
            span = np.minimum(hi - lo + 1, n)
            hi = lo + span - 1
        else:
            lo = np.maximum(lo, 0)
            hi = np.minimum(hi, n - 1)
        table = [extended]
        step = 1
        while 2 * step <= int((hi - lo + 1).max()):
            prev = table[-1]
            table.append(np.maximum(prev[:-step], prev[step:]))
            step *= 2
        length = hi - lo + 1
        level = np.floor(np.log2(length)).astype(np.int64)
        result = np.empty(n, dtype=float)
        for k in np.unique(level):
            rows = np.flatnonzero(level == k)
            width = 1 << int(k)
            result[rows] = np.maximum(table[k][lo[rows]], table[k][hi[rows] - width + 1])
        return result


class DenseNeighbourhoods(Neighbourhoods):
    def __init__(self, mask: np.ndarray) -> None:
        self.mask = mask
        self.size = int(mask.shape[0])

    def members(self, i: int) -> np.ndarray:
        return np.flatnonzero(self.mask[i])

    def sizes(self) -> np.ndarray:
        return self.mask.sum(axis=1)

    def range_max(self, values: np.ndarray) -> np.ndarray:
        return np.where(self.mask, values[None, :], -np.inf).max(axis=1)


_neighbourhoods: BoundedCache[Neighbourhoods] = BoundedCache()


def clear_neighbourhood_cache() -> None:
    _neighbourhoods.clear()


def arcs_apply(system: SemigroupSystem, epsilon: float) -> bool:
    return epsilon * system.max_factor() < ARC_FACTOR_BOUND


def bowen_neighbourhoods(
    system: SemigroupSystem,
    w: Word,
    cloud: SampleCloud,
    epsilon: float,
    closed: bool = False,
) -> Neighbourhoods:
    """
    Neighbourhoods {y : d_w(x, y) < epsilon} (or <= epsilon when ``closed``).

    Raises:
        BudgetExceededError: If balls may not be arcs and the cloud is too large
            for the pairwise fallback
    """
    key = (cloud.cloud_id, system.maps, system.metric_mode, w.symbols, float(epsilon), closed)
    return _neighbourhoods.get_or_compute(
        key, lambda: _compute_neighbourhoods(system, w, cloud, epsilon, closed)
    )


def _compute_neighbourhoods(
    system: SemigroupSystem, w: Word, cloud: SampleCloud, epsilon: float, closed: bool
) -> Neighbourhoods:
    positions = cloud.sorted_points
    if arcs_apply(system, epsilon):
        orbit = orbit_matrix(system, w, positions)
        circular = system.metric_mode is MetricMode.CIRCLE
        right_cap, left_cap = _lag_caps(positions, epsilon, closed, circular)
        right = _arc_extent(system, orbit, right_cap, +1, epsilon, closed, circular)
        left = _arc_extent(system, orbit, left_cap, -1, epsilon, closed, circular)
        return ArcNeighbourhoods(left.astype(np.int32), right.astype(np.int32), circular)
    if positions.size > DENSE_PAIRWISE_LIMIT:
        raise BudgetExceededError(
            f"epsilon={epsilon} is too coarse for arc neighbourhoods and {positions.size} points "
            f"exceed the pairwise limit {DENSE_PAIRWISE_LIMIT}"
        )
    logger.debug("dense neighbourhoods for word %s at epsilon=%g", w, epsilon)
    orbit = orbit_matrix(system, w, positions)
    distances = np.zeros((positions.size, positions.size))
    for row in orbit:
        np.maximum(distances, system.distance(row[:, None], row[None, :]), out=distances)
    return DenseNeighbourhoods(distances <= epsilon if closed else distances < epsilon)


def _lag_caps(
    positions: np.ndarray, epsilon: float, closed: bool, circular: bool
) -> tuple[np.ndarray, np.ndarray]:
    """Largest index lags to the right and left within base distance epsilon."""
    n = positions.size
    index = np.arange(n)
    upper_side = "right" if closed else "left"
    lower_side = "left" if closed else "right"
    if circular:
        ahead = np.concatenate((positions, positions + 1.0))
        behind = np.concatenate((positions - 1.0, positions))
        right = np.searchsorted(ahead, positions + epsilon, side=upper_side) - 1 - index
        left = index + n - np.searchsorted(behind, positions - epsilon, side=lower_side)
        right = np.clip(right, 0, n - 1)
        left = np.clip(left, 0, n - 1 - right)
    else:
        right = np.searchsorted(positions, positions + epsilon, side=upper_side) - 1 - index
        left = index - np.searchsorted(positions, positions - epsilon, side=lower_side)
        right = np.maximum(right, 0)
        left = np.maximum(left, 0)
    return right, left


def _arc_extent(
    system: SemigroupSystem,
    orbit: np.ndarray,
    cap: np.ndarray,
    direction: int,
    epsilon: float,
    closed: bool,
    circular: bool,
) -> np.ndarray:
    """Bisect, for every point at once, the last lag still inside its ball."""
    n = orbit.shape[1]
    lo = np.zeros(n, dtype=np.int64)
    hi = cap.astype(np.int64) + 1
    active = np.flatnonzero(hi - lo > 1)
    while active.size:
        mid = (lo[active] + hi[active]) // 2
        other = active + direction * mid
        if circular:
            other %= n
        gaps = np.max(system.distance(orbit[:, active], orbit[:, other]), axis=0)
        inside = gaps <= epsilon if closed else gaps < epsilon
        lo[active] = np.where(inside, mid, lo[active])
        hi[active] = np.where(inside, hi[active], mid)
        active = active[hi[active] - lo[active] > 1]
    return lo
