"""
Independent dimension estimates used to cross-check Bowen roots.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence

import numpy as np
from scipy import optimize, stats

from src.semigroup.errors import ConfigError
from src.semigroup.numerics_config import MORAN_XTOL
from src.semigroup.sets import SampleCloud

logger = logging.getLogger(__name__)


def box_counts(points: np.ndarray, scales: Sequence[float]) -> list[int]:
    """Number of occupied boxes [j r, (j + 1) r) at every scale r."""
    return [int(np.unique(np.floor(points / r)).size) for r in scales]


def box_counting_dimension(cloud: SampleCloud | Sequence[float], scales: Sequence[float]) -> float:
    """
    Regression slope of log N(r) against log(1 / r).

    This is a proxy for the Hausdorff dimension; callers attach the PROXY flag
    when they report it.

    Args:
        cloud: Cloud or plain sequence of points in [0, 1)
        scales: At least three box sizes in (0, 1]

    Returns:
        The fitted slope; 0 for a single point
    """
    if len(scales) < 3:
        raise ConfigError("box counting needs at least three scales", "commands.dimension.scales")
    if any(not 0 < r <= 1 for r in scales):
        raise ConfigError("box scales must lie in (0, 1]", "commands.dimension.scales")
    points = cloud.points if isinstance(cloud, SampleCloud) else np.asarray(cloud, dtype=float)
    counts = box_counts(points, scales)
    fit = stats.linregress(np.log(1.0 / np.asarray(scales)), np.log(np.asarray(counts, dtype=float)))
    logger.debug("box counts %s at scales %s: slope %.6f", counts, list(scales), fit.slope)
    return float(fit.slope)


def moran_dimension(ratios: Sequence[float]) -> float:
    """Similarity dimension: the s with sum_i r_i**s = 1."""
    r = np.asarray(ratios, dtype=float)
    if r.size == 0:
        raise ConfigError("at least one contraction ratio is required")
    if np.any((r <= 0) | (r >= 1)):
        raise ConfigError(f"contraction ratios must lie in (0, 1), got {list(ratios)}")
    if r.size == 1:
        return 0.0
    upper = math.log(r.size) / -math.log(float(r.max())) + 1.0
    return float(optimize.brentq(lambda s: float(np.sum(r**s)) - 1.0, 0.0, upper, xtol=MORAN_XTOL))
