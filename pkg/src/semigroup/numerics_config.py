"""
Configuration for the numerical estimators.
Contains adjustable defaults for budgets, tolerances and caches.
"""

import os


def _environment_bool(name: str, default: bool) -> bool:
    value = os.environ.get(name)
    if value is None:
        return default
    return value.strip().lower() in {"1", "true", "yes", "on"}


# Largest m^n enumerated exhaustively before switching to sampled words
WORD_BUDGET = 2**14

# Words drawn per length when averaging by Monte-Carlo
MC_SAMPLES = 512

# Largest number of cloud points produced by discretize
CLOUD_BUDGET = 2**20

# Clouds up to this size may fall back to a dense pairwise Bowen-distance matrix
DENSE_PAIRWISE_LIMIT = 4096

# A cell is resolved when h <= RESOLUTION_SAFETY * eps * exp(-N * max log a)
RESOLUTION_SAFETY = 1.0

# Bowen balls are arcs when eps * max factor stays below this bound
ARC_FACTOR_BOUND = 0.5

# Bounded LRU capacity for cached neighbourhoods and covers
NEIGHBOURHOOD_CACHE_SIZE = 256

# Grid used for numeric sup-norms over [0, 1)
SUP_GRID_SIZE = 4097

# Pressure regression
NONMONOTONE_TOLERANCE = 0.05
MIN_WORD_LENGTHS = 3

# Bowen equation
P_TOL = 0.02
T_TOL = 0.01
BRACKET_SLACK_FACTOR = 10
TRACE_MONOTONE_TOLERANCE = 0.02
MAX_BISECTION_STEPS = 60

# Caratheodory cover search
CARATHEODORY_EXTENSION = 1
CARATHEODORY_ALPHA_TOL = 1e-3
MAX_COVER_SIZE = 2**18

# Lyapunov surrogates
LYAPUNOV_TAU = 0.01
TEMPERED_EPSILON = 0.05
TEMPERED_M_CAP = 50.0

# Local pressure
MIN_SAMPLE_BUDGET = 1000
MAX_SAMPLE_BUDGET = 10**6
TARGET_HITS = 100
WINDOW_ENLARGEMENT = 1.25
RADIUS_AGREEMENT_TOLERANCE = 0.05

# Skew product: direct sums on Sigma_m x cloud are only formed for small cells
SKEW_CHECK_POINTS = 6
SKEW_CHECK_BUDGET = 512
SKEW_CHECK_LENGTHS = (1, 2)
SKEW_CHECK_EPSILONS = (0.5, 0.25)

# Moran equation
MORAN_XTOL = 1e-12

# CSV float formatting (12 significant digits)
CSV_FLOAT_FORMAT = "{:.12g}"

# Verify separated => spanning on every maximal_separated call
DEBUG_CHECKS = _environment_bool("SEMIGROUP_DEBUG_CHECKS", False)

# Environment variable naming the default worker count
THREADS_ENV_VAR = "SEMIGROUP_THREADS"
