"""
Data Validation Functions

Boolean checks on matrices, partitions and grids. They log and return;
callers decide which exception to raise.
"""

import numpy as np

from utils.logger import get_logger

logger = get_logger(__name__)


def validate_square(a: np.ndarray) -> bool:
    """
    Validate that an array is a non-empty square matrix.

    Args:
        a: Array to check

    Returns:
        True if 2-D, square and non-empty
    """
    is_valid = a.ndim == 2 and a.shape[0] == a.shape[1] and a.shape[0] >= 1
    if not is_valid:
        logger.debug(f"Not a square matrix: shape={a.shape}")
    return is_valid


def validate_power_of_two(dim: int) -> bool:
    """
    Validate dimension is 2^n with n >= 0.

    Example:
        assert validate_power_of_two(16)
    """
    return dim >= 1 and (dim & (dim - 1)) == 0


def validate_hermitian(a: np.ndarray, tol: float) -> bool:
    """
    Validate max |a[i,j] - conj(a[j,i])| <= tol.

    Args:
        a: Square matrix
        tol: Absolute tolerance

    Returns:
        True if Hermitian within tol
    """
    deviation = float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0
    is_valid = deviation <= tol
    if not is_valid:
        logger.debug(f"Hermitian check failed: deviation={deviation:.3e} > {tol:.1e}")
    return is_valid


def validate_unit_trace(a: np.ndarray, tol: float) -> bool:
    """Validate |Tr a - 1| <= tol."""
    deviation = abs(complex(np.trace(a)) - 1.0)
    is_valid = deviation <= tol
    if not is_valid:
        logger.debug(f"Trace check failed: |Tr - 1|={deviation:.3e} > {tol:.1e}")
    return is_valid


def validate_probability(p: float) -> bool:
    """Validate 0 <= p <= 1."""
    return 0.0 <= p <= 1.0


def validate_contiguous_ids(assignments) -> bool:
    """
    Validate environment ids form {0..k-1} with every id used.

    Example:
        assert validate_contiguous_ids([0, 1, 2, 2])
        assert not validate_contiguous_ids([0, 2, 2, 2])
    """
    if len(assignments) == 0:
        return False
    ids = set(assignments)
    is_valid = all(isinstance(i, (int, np.integer)) for i in assignments) and ids == set(range(len(ids)))
    if not is_valid:
        logger.debug(f"Assignment ids not contiguous: {list(assignments)}")
    return is_valid


def validate_ascending(values) -> bool:
    """Validate a sequence is non-decreasing (repeated grid points allowed)."""
    arr = np.asarray(values, dtype=float)
    return bool(np.all(np.diff(arr) >= 0.0))
