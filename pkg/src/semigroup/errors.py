"""
Exceptions and diagnostic flags shared by every semigroup module.

Errors map onto CLI exit codes:
- ConfigError and subclasses: invalid input or schema violation (exit 2)
- DiagnosticError and subclasses: UNRESOLVED / NONMONOTONE style diagnostics (exit 3)
- NumericalAbort: a numerical procedure could not finish (exit 4)
"""

from __future__ import annotations

from enum import StrEnum
from typing import Any


class Flag(StrEnum):
    """Diagnostic labels attached to estimates and reports."""

    UNRESOLVED = "UNRESOLVED"
    NONMONOTONE = "NONMONOTONE"
    COVER_FAIL = "COVER_FAIL"
    CHECK_FAIL = "CHECK_FAIL"
    WARN_NONEXPANDING = "WARN_NONEXPANDING"
    ZERO_MASS = "ZERO_MASS"
    RADIUS_UNSTABLE = "RADIUS_UNSTABLE"
    MONTE_CARLO = "MONTE_CARLO"
    PROXY = "PROXY"


class SemigroupError(Exception):
    """Base class for all errors raised by the package."""

    exit_code = 1


class ConfigError(SemigroupError, ValueError):
    """Invalid parameters or a config document that violates the schema."""

    exit_code = 2

    def __init__(self, message: str, path: str | None = None):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class BudgetExceededError(ConfigError):
    """A word enumeration or discretisation would exceed its budget."""


class DiagnosticError(SemigroupError):
    """A computation finished but its diagnostics forbid trusting the value."""

    exit_code = 3
    flag: Flag = Flag.UNRESOLVED

    def __init__(self, message: str, partial: Any = None):
        self.partial = partial
        super().__init__(f"{self.flag}: {message}")


class UnresolvedError(DiagnosticError):
    flag = Flag.UNRESOLVED


class NonMonotoneError(DiagnosticError):
    flag = Flag.NONMONOTONE


class CoverFailError(DiagnosticError):
    flag = Flag.COVER_FAIL


class NonExpandingError(DiagnosticError):
    flag = Flag.WARN_NONEXPANDING


class NumericalAbort(SemigroupError, RuntimeError):
    """A root could not be bracketed or an iteration did not converge."""

    exit_code = 4


class NonExpandingWarning(UserWarning):
    """Lyapunov lower bound on a cloud is not positive."""
