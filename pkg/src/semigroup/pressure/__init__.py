"""
Topological pressure and entropy estimators for free semigroup actions.
"""

from src.semigroup.pressure.capacity import capacity_pressure, entropy, fit_slope
from src.semigroup.pressure.caratheodory import caratheodory_pressure
from src.semigroup.pressure.models import (
    CELL_COLUMNS,
    AveragedSum,
    CellSandwich,
    PartitionCell,
    PressureEstimate,
    SlopeFit,
)
from src.semigroup.pressure.partition import (
    averaged_partition,
    cell_resolved,
    partition_sum_separated,
    partition_sum_spanning,
    spanning_separated_sandwich,
)
from src.semigroup.pressure.schedule import Schedule

__all__ = [
    "CELL_COLUMNS",
    "AveragedSum",
    "CellSandwich",
    "PartitionCell",
    "PressureEstimate",
    "Schedule",
    "SlopeFit",
    "averaged_partition",
    "capacity_pressure",
    "caratheodory_pressure",
    "cell_resolved",
    "entropy",
    "fit_slope",
    "partition_sum_separated",
    "partition_sum_spanning",
    "spanning_separated_sandwich",
]
