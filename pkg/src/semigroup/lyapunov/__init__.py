"""
Lyapunov exponents along words and the sets A(E) and B at a finite horizon.
"""

from src.semigroup.dynamics import lyapunov_word
from src.semigroup.lyapunov.exponents import (
    LyapunovReport,
    bounded_contraction_margin,
    classify_point,
    lyapunov_envelope,
    tempered_margin,
)

__all__ = [
    "LyapunovReport",
    "bounded_contraction_margin",
    "classify_point",
    "lyapunov_envelope",
    "lyapunov_word",
    "tempered_margin",
]
