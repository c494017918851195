"""
Shared pytest fixtures for semigroup-pressure tests.

Systems and clouds are session scoped: they are immutable, and the estimators
cache neighbourhoods per cloud, so sharing them keeps the suite fast.
"""

import os
import sys
from pathlib import Path

import pytest

from src.semigroup.pressure import Schedule
from src.semigroup.sets import CantorSymbolic, Interval, discretize
from src.semigroup.systems import LinearMod1, MannevillePomeau, MetricMode, SemigroupSystem

# Add the project root directory to Python path
project_root = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
if project_root not in sys.path:
    sys.path.insert(0, project_root)


@pytest.fixture(scope="session")
def test_data_path() -> Path:
    """Directory holding the test config documents."""
    return Path(project_root) / "tests" / "data"


@pytest.fixture(scope="session")
def example_configs_path() -> Path:
    return Path(project_root) / "src" / "data" / "configs"


@pytest.fixture(scope="session")
def doubling():
    return SemigroupSystem.create([LinearMod1(2)])


@pytest.fixture(scope="session")
def two_slopes():
    return SemigroupSystem.create([LinearMod1(2), LinearMod1(4)])


@pytest.fixture(scope="session")
def slopes_2_3():
    return SemigroupSystem.create([LinearMod1(2), LinearMod1(3)])


@pytest.fixture(scope="session")
def tripling_interval():
    return SemigroupSystem.create([LinearMod1(3)], metric_mode=MetricMode.INTERVAL)


@pytest.fixture(scope="session")
def manneville_pomeau():
    return SemigroupSystem.create([MannevillePomeau(0.5), MannevillePomeau(0.25)])


@pytest.fixture(scope="session")
def fine_grid():
    """Dyadic grid of [0, 1) with spacing 2**-16."""
    return discretize(Interval(0.0, 1.0), 2.0**-16)


@pytest.fixture(scope="session")
def medium_grid():
    return discretize(Interval(0.0, 1.0), 2.0**-14)


@pytest.fixture(scope="session")
def coarse_grid():
    return discretize(Interval(0.0, 1.0), 2.0**-10)


@pytest.fixture(scope="session")
def cantor_cloud():
    """Depth-10 middle-third Cantor cloud."""
    return discretize(CantorSymbolic.uniform(3, (0, 2), 10))


@pytest.fixture
def doubling_schedule() -> Schedule:
    return Schedule((6, 7, 8, 9, 10), (2.0**-3, 2.0**-4))


@pytest.fixture
def two_slopes_schedule() -> Schedule:
    return Schedule((2, 3, 4, 5), (2.0**-4, 2.0**-5))


@pytest.fixture
def cantor_schedule() -> Schedule:
    return Schedule((2, 3, 4, 5), (1.0 / 9.0, 1.0 / 27.0))
