"""
Bowen's equation, its bracketing checks and independent dimension oracles.
"""

from src.semigroup.bowen.dimension import box_counting_dimension, box_counts, moran_dimension
from src.semigroup.bowen.root import (
    TRACE_COLUMNS,
    BowenResult,
    LinearityRow,
    SlopeCheck,
    bowen_root,
    dimension_equal_exponent,
    exponent_linearity_check,
    lyapunov_bounds_on_cloud,
    pressure_at_t,
    pressure_estimate_at_t,
    pressure_slope_check,
)

__all__ = [
    "TRACE_COLUMNS",
    "BowenResult",
    "LinearityRow",
    "SlopeCheck",
    "bowen_root",
    "box_counting_dimension",
    "box_counts",
    "dimension_equal_exponent",
    "exponent_linearity_check",
    "lyapunov_bounds_on_cloud",
    "moran_dimension",
    "pressure_at_t",
    "pressure_estimate_at_t",
    "pressure_slope_check",
]
