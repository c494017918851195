"""
Config ingestion, experiment orchestration, run artifacts and the acceptance suite.
"""

from src.semigroup.cli.acceptance import CRITERIA, CriterionResult, run_acceptance
from src.semigroup.cli.experiment_cli import COMMANDS, main, run_command
from src.semigroup.cli.experiment_config import Experiment, load_config, validate_config
from src.semigroup.cli.outputs import RunOutputs

__all__ = [
    "COMMANDS",
    "CRITERIA",
    "CriterionResult",
    "Experiment",
    "RunOutputs",
    "load_config",
    "main",
    "run_acceptance",
    "run_command",
    "validate_config",
]
