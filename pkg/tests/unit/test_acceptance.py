"""End-to-end acceptance criteria against closed forms and exact invariances."""

import pytest

from src.semigroup.cli import CRITERIA, run_acceptance
from src.semigroup.cli.acceptance import ACCEPTANCE_COLUMNS
from src.semigroup.errors import ConfigError

pytestmark = pytest.mark.acceptance


@pytest.mark.slow
@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion_passes(number):
    result = CRITERIA[number]()

    assert result.criterion == number
    assert result.passed, f"{result.name}: observed {result.observed}, expected {result.expected}"


@pytest.mark.slow
def test_selected_criteria_run_in_order():
    results = run_acceptance([7, 1])

    assert [r.criterion for r in results] == [1, 7]
    assert list(results[0].to_row()) == list(ACCEPTANCE_COLUMNS)


def test_unknown_criterion():
    with pytest.raises(ConfigError) as info:
        run_acceptance([11])
    assert info.value.path == "config.commands.acceptance.criteria"
