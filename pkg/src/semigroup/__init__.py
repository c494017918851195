"""
Topological pressure, entropy, Lyapunov exponents and Bowen-equation dimension
estimates for free semigroup actions of conformal circle and interval maps.
"""

__version__ = "0.1.0"
