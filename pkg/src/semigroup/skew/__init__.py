"""
Skew-product extension of a free semigroup action and its pressure identity.
"""

from src.semigroup.skew.skew_product import (
    BOUND_COLUMNS,
    BoundRow,
    IdentityCheck,
    SkewPoint,
    SkewPotential,
    SkewPressure,
    measured_multiplicity,
    sensitive_indices,
    skew_apply,
    skew_birkhoff_sum,
    skew_bound_rows,
    skew_capacity_pressure,
    skew_distance,
    skew_orbit,
    skew_partition_sums,
    symbolic_multiplicity,
    verify_pressure_identity,
    window_radius,
)

__all__ = [
    "BOUND_COLUMNS",
    "BoundRow",
    "IdentityCheck",
    "SkewPoint",
    "SkewPotential",
    "SkewPressure",
    "measured_multiplicity",
    "sensitive_indices",
    "skew_apply",
    "skew_birkhoff_sum",
    "skew_bound_rows",
    "skew_capacity_pressure",
    "skew_distance",
    "skew_orbit",
    "skew_partition_sums",
    "symbolic_multiplicity",
    "verify_pressure_identity",
    "window_radius",
]
