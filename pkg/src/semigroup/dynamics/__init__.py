"""
Orbit, Birkhoff-sum and Bowen-metric kernel.
"""

from src.semigroup.dynamics.kernel import (
    OrbitSegment,
    birkhoff_sum,
    birkhoff_sums,
    bowen_distance,
    bowen_distance_matrix,
    in_bowen_ball,
    log_factor_sums,
    lyapunov_ball_radii,
    lyapunov_word,
    orbit_distances,
    orbit_matrix,
    orbit_segment,
)

__all__ = [
    "OrbitSegment",
    "birkhoff_sum",
    "birkhoff_sums",
    "bowen_distance",
    "bowen_distance_matrix",
    "in_bowen_ball",
    "log_factor_sums",
    "lyapunov_ball_radii",
    "lyapunov_word",
    "orbit_distances",
    "orbit_matrix",
    "orbit_segment",
]
