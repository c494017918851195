"""
Main entry point for the experiment CLI.

This allows the package to be run with 'python -m src.semigroup'.
"""

import sys

from src.semigroup.cli.experiment_cli import main

if __name__ == "__main__":
    sys.exit(main())
