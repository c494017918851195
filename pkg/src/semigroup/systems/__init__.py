"""
Conformal map families, potentials and the systems built from them.
"""

from src.semigroup.systems.maps import (
    ConformalMap,
    LinearMod1,
    MannevillePomeau,
    MetricMode,
    PiecewiseLinearFull,
    base_distance,
)
from src.semigroup.systems.potentials import (
    Constant,
    Potential,
    ScaledLogFactor,
    Zero,
    geometric_potential,
)
from src.semigroup.systems.system import (
    FamilyCertificate,
    SemigroupSystem,
    certify_family,
    geometric_system,
    potential_sup_distance,
)

__all__ = [
    "ConformalMap",
    "Constant",
    "FamilyCertificate",
    "LinearMod1",
    "MannevillePomeau",
    "MetricMode",
    "PiecewiseLinearFull",
    "Potential",
    "ScaledLogFactor",
    "SemigroupSystem",
    "Zero",
    "base_distance",
    "certify_family",
    "geometric_potential",
    "geometric_system",
    "potential_sup_distance",
]
