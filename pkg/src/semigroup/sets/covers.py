"""
Greedy (w, epsilon)-separated and (w, epsilon)-spanning subsets of a cloud.

Separated sets insert points in descending Birkhoff-sum order and skip anything
closer than epsilon to an accepted point, which makes the result maximal and
therefore spanning. Spanning sets are greedy set covers: largest remaining
coverage first, ties to the smaller Birkhoff sum. Ties that survive both keys
go to the smaller sorted position.
"""

from __future__ import annotations

import heapq
import logging

import numpy as np

from src.semigroup.dynamics import birkhoff_sums
from src.semigroup.numerics_config import DEBUG_CHECKS
from src.semigroup.parallel import BoundedCache
from src.semigroup.sets.neighborhoods import (
    ArcNeighbourhoods,
    Neighbourhoods,
    bowen_neighbourhoods,
)
from src.semigroup.sets.regions import SampleCloud
from src.semigroup.systems import SemigroupSystem
from src.semigroup.systems.potentials import ordering_token
from src.semigroup.words import Word

logger = logging.getLogger(__name__)

_selections: BoundedCache[np.ndarray] = BoundedCache(max_entries=512)


def clear_selection_cache() -> None:
    _selections.clear()


def sorted_birkhoff_sums(system: SemigroupSystem, w: Word, cloud: SampleCloud) -> np.ndarray:
    return birkhoff_sums(system, w, cloud.sorted_points)


def _selection_key(
    kind: str, system: SemigroupSystem, w: Word, cloud: SampleCloud, epsilon: float, sums: np.ndarray
) -> tuple | None:
    if np.all(sums == sums[0]):
        token: str | None = "index"
    else:
        token = ordering_token(system.potentials)
    if token is None:
        return None
    return (kind, cloud.cloud_id, system.maps, system.metric_mode, w.symbols, float(epsilon), token)


def separated_selection(
    system: SemigroupSystem, w: Word, cloud: SampleCloud, epsilon: float, sums: np.ndarray
) -> np.ndarray:
    """Sorted-order indices of the greedy maximal separated set."""
    key = _selection_key("separated", system, w, cloud, epsilon, sums)
    if key is None:
        return greedy_separated(bowen_neighbourhoods(system, w, cloud, epsilon), sums)
    return _selections.get_or_compute(
        key, lambda: greedy_separated(bowen_neighbourhoods(system, w, cloud, epsilon), sums)
    )


def spanning_selection(
    system: SemigroupSystem, w: Word, cloud: SampleCloud, epsilon: float, sums: np.ndarray
) -> np.ndarray:
    """Sorted-order indices of the greedy spanning set."""
    key = _selection_key("spanning", system, w, cloud, epsilon, sums)
    if key is None:
        return greedy_cover(bowen_neighbourhoods(system, w, cloud, epsilon), sums)
    return _selections.get_or_compute(
        key, lambda: greedy_cover(bowen_neighbourhoods(system, w, cloud, epsilon), sums)
    )


def maximal_separated(
    system: SemigroupSystem, w: Word, cloud: SampleCloud, epsilon: float
) -> np.ndarray:
    """
    Greedy maximal (w, epsilon)-separated subset of the cloud.

    Args:
        system: Maps and the potentials that order the insertion
        w: Word defining the Bowen metric
        cloud: Candidate points
        epsilon: Separation scale; accepted points satisfy d_w >= epsilon

    Returns:
        Indices into ``cloud.points`` in insertion order
    """
    sums = sorted_birkhoff_sums(system, w, cloud)
    chosen = separated_selection(system, w, cloud, epsilon, sums)
    if DEBUG_CHECKS:
        _check_spanning(bowen_neighbourhoods(system, w, cloud, epsilon), chosen)
    return cloud.order[chosen]


def greedy_spanning(system: SemigroupSystem, w: Word, cloud: SampleCloud, epsilon: float) -> np.ndarray:
    """Greedy (w, epsilon)-spanning subset; returns indices into ``cloud.points``."""
    sums = sorted_birkhoff_sums(system, w, cloud)
    return cloud.order[spanning_selection(system, w, cloud, epsilon, sums)]


def greedy_separated(neighbourhoods: Neighbourhoods, sums: np.ndarray) -> np.ndarray:
    """Greedy maximal separated indices on any neighbourhood structure, largest sums first."""
    if isinstance(neighbourhoods, ArcNeighbourhoods) and np.all(sums == sums[0]):
        return _jump_separated(neighbourhoods)
    order = np.argsort(-sums, kind="stable")
    blocked = np.zeros(neighbourhoods.size, dtype=bool)
    chosen: list[int] = []
    for i in order:
        if blocked[i]:
            continue
        chosen.append(int(i))
        neighbourhoods.mark(int(i), blocked)
    return np.asarray(chosen, dtype=np.int32)


def _jump_separated(arcs: ArcNeighbourhoods) -> np.ndarray:
    """Index-order greedy on arcs: after accepting i the next free point is i + right[i] + 1."""
    n = arcs.size
    stop = n - int(arcs.left[0]) if arcs.circular else n
    chosen = [0]
    i = 0
    while True:
        i = i + int(arcs.right[i]) + 1
        if i >= stop:
            break
        chosen.append(i)
    return np.asarray(chosen, dtype=np.int32)


def greedy_cover(neighbourhoods: Neighbourhoods, sums: np.ndarray) -> np.ndarray:
    covered = np.zeros(neighbourhoods.size, dtype=bool)
    sizes = neighbourhoods.sizes()
    heap = [(-int(sizes[i]), float(sums[i]), i) for i in range(neighbourhoods.size)]
    heapq.heapify(heap)
    remaining = neighbourhoods.size
    chosen: list[int] = []
    while remaining:
        neg_gain, s, i = heapq.heappop(heap)
        gain = neighbourhoods.count_unmarked(i, covered)
        if gain == -neg_gain:
            chosen.append(i)
            neighbourhoods.mark(i, covered)
            remaining -= gain
        elif gain > 0:
            heapq.heappush(heap, (-gain, s, i))
    return np.asarray(chosen, dtype=np.int32)


def _check_spanning(neighbourhoods: Neighbourhoods, chosen: np.ndarray) -> None:
    covered = np.zeros(neighbourhoods.size, dtype=bool)
    for i in chosen:
        neighbourhoods.mark(int(i), covered)
    if not covered.all():
        raise AssertionError(f"{int((~covered).sum())} points are not spanned by the separated set")
