"""Configuration constants for ohzeki_qkp.

This module defines the configuration constants used throughout the
application, including resource limits, solver and sampler defaults,
oracle capacities and output settings.

Dependencies:
    None (pure constants module)
"""

# Resource limits
MAX_MEMORY_GB: int = 24
MAX_MEMORY_BYTES: int = MAX_MEMORY_GB * 1024 * 1024 * 1024
DEFAULT_TIME_LIMIT_SECONDS: float = 60.0

# Exhaustive enumeration and exact oracle capacities
ENUMERATION_MAX_N: int = 25
BNB_MAX_N: int = 32
ENUMERATION_CHUNK: int = 1 << 16

# Sampler defaults
DEFAULT_BETA: float = 0.1
DEFAULT_MCMC_SAMPLES: int = 1000
DEFAULT_SQA_SAMPLES: int = 500
DEFAULT_SWEEPS: int = 1000
DEFAULT_TROTTER: int = 2
DEFAULT_GAMMA_START: float = 10.0
DEFAULT_GAMMA_END: float = 0.1

# Solver defaults
DEFAULT_TAU_INIT: float = 0.5
DEFAULT_TAU_MIN: float = 0.01
DEFAULT_T_MAX: int = 50
DEFAULT_EPSILON: float = 0.001
DEFAULT_NON_IMPROVE_WINDOW: int = 10
EQUALITY_TOLERANCE: float = 1e-9

# QKP generator ranges (inclusive)
PROFIT_RANGE: tuple[int, int] = (1, 100)
WEIGHT_RANGE: tuple[int, int] = (1, 50)
MIN_CAPACITY: int = 50

# Harness defaults
DEFAULT_SIZES: tuple[int, ...] = (8, 16)
DEFAULT_DENSITIES: tuple[float, ...] = (0.2, 0.6, 1.0)
DEFAULT_INSTANCES_PER_CELL: int = 100
DEFAULT_BASE_SEED: int = 0

# Output settings
RESULTS_DIR: str = "results"
REPORT_SCHEMA_VERSION: int = 1
