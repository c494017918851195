"""
Finite representations of Z and their separated and spanning subsets.
"""

from src.semigroup.sets.covers import greedy_spanning, maximal_separated
from src.semigroup.sets.neighborhoods import (
    ArcNeighbourhoods,
    DenseNeighbourhoods,
    Neighbourhoods,
    bowen_neighbourhoods,
)
from src.semigroup.sets.regions import (
    CantorSymbolic,
    Interval,
    PointList,
    RegionSpec,
    SampleCloud,
    discretize,
    region_from_dict,
)

__all__ = [
    "ArcNeighbourhoods",
    "CantorSymbolic",
    "DenseNeighbourhoods",
    "Interval",
    "Neighbourhoods",
    "PointList",
    "RegionSpec",
    "SampleCloud",
    "bowen_neighbourhoods",
    "discretize",
    "greedy_spanning",
    "maximal_separated",
    "region_from_dict",
]
