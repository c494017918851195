"""Deterministic worker pool, bounded caches and seeded random streams."""

from __future__ import annotations

import os
from collections import OrderedDict
from collections.abc import Callable, Hashable, Iterable
from concurrent.futures import ThreadPoolExecutor
from threading import Lock
from typing import Any, Generic, TypeVar

import numpy as np

from src.semigroup.numerics_config import NEIGHBOURHOOD_CACHE_SIZE, THREADS_ENV_VAR

T = TypeVar("T")
R = TypeVar("R")
V = TypeVar("V")

_default_threads: int | None = None


def set_default_threads(threads: int | None) -> None:
    """Override the worker count used when callers pass ``threads=None``."""

    global _default_threads
    if threads is not None and threads < 1:
        raise ValueError("threads must be positive")
    _default_threads = threads


def default_threads() -> int:
    if _default_threads is not None:
        return _default_threads
    value = os.environ.get(THREADS_ENV_VAR)
    if value:
        try:
            return max(1, int(value))
        except ValueError:
            return 1
    return 1


def ordered_map(fn: Callable[[T], R], items: Iterable[T], threads: int | None = None) -> list[R]:
    """Map ``fn`` over ``items`` and return results in input order.

    Reductions over the returned list are therefore independent of how the
    pool schedules the work.
    """

    items = list(items)
    workers = threads if threads is not None else default_threads()
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(workers, len(items))) as executor:
        return list(executor.map(fn, items))


class BoundedCache(Generic[V]):
    """Thread-safe LRU map with a fixed number of entries."""

    def __init__(self, max_entries: int = NEIGHBOURHOOD_CACHE_SIZE) -> None:
        if max_entries < 1:
            raise ValueError("max_entries must be positive")
        self._max_entries = max_entries
        self._lock = Lock()
        self._entries: OrderedDict[Hashable, V] = OrderedDict()
        self.hits = 0
        self.misses = 0

    def get(self, key: Hashable) -> V | None:
        with self._lock:
            value = self._entries.get(key)
            if value is None:
                self.misses += 1
                return None
            self._entries.move_to_end(key)
            self.hits += 1
            return value

    def put(self, key: Hashable, value: V) -> None:
        with self._lock:
            self._entries[key] = value
            self._entries.move_to_end(key)
            while len(self._entries) > self._max_entries:
                self._entries.popitem(last=False)

    def get_or_compute(self, key: Hashable, compute: Callable[[], V]) -> V:
        value = self.get(key)
        if value is None:
            # Two threads may compute the same entry; both results are identical.
            value = compute()
            self.put(key, value)
        return value

    def clear(self) -> None:
        with self._lock:
            self._entries.clear()

    def __len__(self) -> int:
        with self._lock:
            return len(self._entries)


def philox_generator(seed: int, *spawn_key: Any) -> np.random.Generator:
    """Counter-based generator for the stream identified by ``spawn_key``.

    Distinct keys give independent, reproducible streams regardless of the
    order in which workers request them.
    """

    key = tuple(_stable_key_part(part) for part in spawn_key)
    sequence = np.random.SeedSequence(entropy=int(seed), spawn_key=key)
    return np.random.Generator(np.random.Philox(sequence))


def _stable_key_part(part: Any) -> int:
    if isinstance(part, (int, np.integer)):
        return int(part) & 0xFFFFFFFF
    # str hashes are salted per process; fold the text into an integer instead.
    text = str(part).encode()
    value = 0
    for byte in text:
        value = (value * 131 + byte) & 0xFFFFFFFF
    return value
