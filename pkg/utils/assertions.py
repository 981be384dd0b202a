"""
Custom Assertion Functions

Assertions on density matrices and measure curves with messages that
say where and by how much a check failed. Used by the test suites.

Usage:
    from utils.assertions import assert_density_matrix, assert_nonincreasing

    assert_density_matrix(rho_t)
    assert_nonincreasing(series.purity, atol=1e-12, label="purity")
"""

import numpy as np

from utils.logger import get_logger

logger = get_logger(__name__)


def assert_matrices_close(actual: np.ndarray, expected: np.ndarray, atol: float = 1e-12, label: str = "matrix"):
    """
    Assert max |actual - expected| <= atol, element-wise.

    Args:
        actual: Computed matrix
        expected: Reference matrix
        atol: Absolute tolerance
        label: Name used in the failure message

    Raises:
        AssertionError with the worst element and its index

    Example:
        assert_matrices_close(evolve(rho0, part, noise, 0.0), rho0)
    """
    assert actual.shape == expected.shape, f"{label}: shape {actual.shape} != {expected.shape}"
    diff = np.abs(np.asarray(actual) - np.asarray(expected))
    worst = float(diff.max()) if diff.size else 0.0
    if worst > atol:
        index = np.unravel_index(int(np.argmax(diff)), diff.shape)
        raise AssertionError(
            f"{label}: max deviation {worst:.3e} > {atol:.1e} at {tuple(int(i) for i in index)} "
            f"(actual {actual[index]}, expected {expected[index]})"
        )
    logger.debug(f"✓ {label} close within {atol:.1e}")


def assert_density_matrix(rho: np.ndarray, atol: float = 1e-10, label: str = "state"):
    """
    Assert Hermitian, unit trace and positive semidefinite.

    Args:
        rho: Candidate density matrix
        atol: Tolerance for all three checks
        label: Name used in the failure message

    Example:
        assert_density_matrix(channel.evolve(rho0, part, noise, 1.0))
    """
    hermitian_dev = float(np.max(np.abs(rho - rho.conj().T)))
    assert hermitian_dev <= atol, f"{label}: not Hermitian (deviation {hermitian_dev:.3e})"

    trace_dev = abs(complex(np.trace(rho)) - 1.0)
    assert trace_dev <= atol, f"{label}: trace deviates from 1 by {trace_dev:.3e}"

    smallest = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min())
    assert smallest >= -atol, f"{label}: negative eigenvalue {smallest:.3e}"
    logger.debug(f"✓ {label} is a density matrix")


def _monotone_violations(values: np.ndarray, atol: float, increasing: bool) -> np.ndarray:
    steps = np.diff(np.asarray(values, dtype=float))
    return np.nonzero(steps < -atol)[0] if increasing else np.nonzero(steps > atol)[0]


def assert_nonincreasing(values, atol: float = 1e-12, label: str = "series"):
    """
    Assert values[i+1] <= values[i] + atol for every i.

    Example:
        assert_nonincreasing(series.ew, label="EW")
    """
    bad = _monotone_violations(values, atol, increasing=False)
    assert bad.size == 0, (
        f"{label}: {bad.size} increases beyond {atol:.1e}, first at index {int(bad[0])} "
        f"({values[bad[0]]!r} -> {values[bad[0] + 1]!r})"
    )
    logger.debug(f"✓ {label} nonincreasing")


def assert_nondecreasing(values, atol: float = 1e-12, label: str = "series"):
    """Assert values[i+1] >= values[i] - atol for every i."""
    bad = _monotone_violations(values, atol, increasing=True)
    assert bad.size == 0, (
        f"{label}: {bad.size} decreases beyond {atol:.1e}, first at index {int(bad[0])} "
        f"({values[bad[0]]!r} -> {values[bad[0] + 1]!r})"
    )
    logger.debug(f"✓ {label} nondecreasing")


def assert_pointwise_ordered(lower, upper, atol: float = 1e-10, label: str = "curves"):
    """
    Assert lower[i] <= upper[i] + atol on a shared grid.

    Example:
        assert_pointwise_ordered(h_cse, h_bse, label="H_CSE <= H_BSE")
    """
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    assert lower.shape == upper.shape, f"{label}: lengths {lower.shape} vs {upper.shape}"
    bad = np.nonzero(lower > upper + atol)[0]
    assert bad.size == 0, (
        f"{label}: violated at {bad.size} points, first index {int(bad[0])} "
        f"({lower[bad[0]]!r} > {upper[bad[0]]!r})"
    )
    logger.debug(f"✓ {label} ordered")


def assert_within_relative(actual: float, expected: float, rel: float, label: str = "value"):
    """
    Assert |actual - expected| <= rel * |expected|.

    Example:
        assert_within_relative(report.empirical, report.expected, 0.05, label="OU variance")
    """
    deviation = abs(actual - expected)
    bound = rel * abs(expected)
    assert deviation <= bound, (
        f"{label}: {actual!r} differs from {expected!r} by {deviation:.3e} "
        f"({deviation / abs(expected):.2%} > {rel:.0%})"
    )
    logger.info(f"✓ {label}: {actual:.6g} within {rel:.0%} of {expected:.6g}")
