"""
Bowen-ball masses and local pressures of reference measures.
"""

from src.semigroup.localmeasure.local_pressure import (
    LOCAL_COLUMNS,
    LocalCell,
    LocalPressureReport,
    SandwichReport,
    local_pressure,
    sandwich_check,
)
from src.semigroup.localmeasure.measures import (
    MassEstimate,
    MeasureModel,
    ball_arc,
    bowen_ball_mass,
    measure_from_dict,
)

__all__ = [
    "LOCAL_COLUMNS",
    "LocalCell",
    "LocalPressureReport",
    "MassEstimate",
    "MeasureModel",
    "SandwichReport",
    "ball_arc",
    "bowen_ball_mass",
    "local_pressure",
    "measure_from_dict",
    "sandwich_check",
]
