"""
Constants

Simulator-wide constants and defaults.
"""

import math

# Dimension limits
MIN_QUBITS = 2
MAX_QUBITS = 12
MAX_DIM = 2 ** MAX_QUBITS

# Series expansion cut-over for the beta-function (g*t below this uses the Taylor form)
BETA_SERIES_CUTOFF = 1e-6

# Preset partitions for four qubits
PARTITION_PRESETS = {
    "cse": (0, 0, 0, 0),
    "bse": (0, 0, 1, 1),
    "tse": (0, 1, 2, 2),
    "ise": (0, 1, 2, 3),
}
PRESET_ORDER = ("cse", "bse", "tse", "ise")

# Entropy bases
LN2 = math.log(2.0)

# CSV formatting
CSV_FLOAT_FORMAT = "%.12g"
CSV_NEWLINE = "\n"
SERIES_COLUMNS = ("t", "ew", "purity", "entropy_nats")
TABLE_COLUMNS = (
    "config", "g",
    "ew_level", "ew_st",
    "p_level", "p_st",
    "h_level", "h_st",
    "beta_end",
)

# Error messages
DIM_MISMATCH = "Dimension mismatch: {} vs {}"
DIM_TOO_LARGE = "Dimension {} exceeds cap {}"
NOT_POWER_OF_TWO = "Dimension {} is not a power of two"
