"""
Dense Complex Matrix Kernel

Small dense helpers on numpy complex arrays, sized for Hilbert spaces up
to 2^12, plus a Hermitian eigensolver with an in-repo cyclic Jacobi
implementation.

Matrices are plain ``numpy.ndarray`` of dtype complex128. Functions never
mutate their inputs.

Usage:
    from dephasim import linalg

    rho = linalg.identity(4) / 16
    linalg.trace(rho)                        # (1+0j)
    linalg.hermitian_eigenvalues(rho)        # sixteen copies of 1/16
"""

import math

import numpy as np
import numpy.typing as npt

from config.settings import config
from dephasim.errors import ConvergenceError, DimensionError, InvalidStateError, ParameterError
from utils.constants import DIM_MISMATCH, DIM_TOO_LARGE, MAX_DIM, NOT_POWER_OF_TWO
from utils.logger import get_logger
from utils.validators import validate_hermitian, validate_power_of_two, validate_square

logger = get_logger(__name__)

ComplexMatrix = npt.NDArray[np.complex128]

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)
HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / math.sqrt(2.0)


# ==================== CONSTRUCTION ====================

def as_matrix(a) -> ComplexMatrix:
    """
    Coerce input to a square complex128 matrix.

    Raises:
        DimensionError: If not square, empty, or larger than 2^12.
    """
    arr = np.asarray(a, dtype=np.complex128)
    if not validate_square(arr):
        raise DimensionError(f"Expected a square matrix, got shape {arr.shape}")
    if arr.shape[0] > MAX_DIM:
        raise DimensionError(DIM_TOO_LARGE.format(arr.shape[0], MAX_DIM))
    return arr


def identity(dim: int) -> ComplexMatrix:
    """Identity of the given dimension."""
    if dim < 1 or dim > MAX_DIM:
        raise DimensionError(DIM_TOO_LARGE.format(dim, MAX_DIM))
    return np.eye(dim, dtype=np.complex128)


def qubit_dim(n_qubits: int) -> int:
    """Return 2^n, checking the dimension cap."""
    if n_qubits < 0:
        raise DimensionError(f"Qubit count must be non-negative, got {n_qubits}")
    dim = 2 ** n_qubits
    if dim > MAX_DIM:
        raise DimensionError(DIM_TOO_LARGE.format(dim, MAX_DIM))
    return dim


def n_qubits_of(a: ComplexMatrix) -> int:
    """
    Number of qubits carried by a 2^n x 2^n matrix.

    Raises:
        DimensionError: If the dimension is not a power of two.
    """
    dim = a.shape[0]
    if not validate_power_of_two(dim):
        raise DimensionError(NOT_POWER_OF_TWO.format(dim))
    return dim.bit_length() - 1


# ==================== ALGEBRA ====================

def kron(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """
    Kronecker product: result[i*db + k, j*db + l] = a[i, j] * b[k, l].

    Raises:
        DimensionError: If the product dimension exceeds 2^12.
    """
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    dim = a.shape[0] * b.shape[0]
    if dim > MAX_DIM:
        raise DimensionError(DIM_TOO_LARGE.format(dim, MAX_DIM))
    return np.kron(a, b)


def kron_all(factors) -> ComplexMatrix:
    """Left-to-right Kronecker product of a sequence of matrices."""
    factors = list(factors)
    if not factors:
        raise DimensionError("kron_all needs at least one factor")
    result = np.asarray(factors[0], dtype=np.complex128)
    for factor in factors[1:]:
        result = kron(result, factor)
    return result


def _require_same_shape(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise DimensionError(DIM_MISMATCH.format(a.shape, b.shape))


def matmul(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Matrix product with a conformity check."""
    if a.shape[-1] != b.shape[0]:
        raise DimensionError(DIM_MISMATCH.format(a.shape, b.shape))
    return a @ b


def adjoint(a: ComplexMatrix) -> ComplexMatrix:
    """Conjugate transpose."""
    return np.conj(a).T


def trace(a: ComplexMatrix) -> complex:
    """Trace as a Python complex."""
    a = as_matrix(a)
    return complex(np.trace(a))


def schur(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Element-wise (Hadamard/Schur) product; equal dims required."""
    _require_same_shape(a, b)
    return a * b


def frobenius_distance(a: ComplexMatrix, b: ComplexMatrix) -> float:
    """Frobenius norm of a - b."""
    _require_same_shape(a, b)
    return float(np.linalg.norm(a - b, ord="fro"))


def conjugate(u: ComplexMatrix, rho: ComplexMatrix) -> ComplexMatrix:
    """U rho U^dagger."""
    return matmul(matmul(u, rho), adjoint(u))


# ==================== EIGENVALUES ====================

def _off_diagonal_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off, ord="fro"))


def _jacobi_rotate(a: np.ndarray, p: int, q: int) -> None:
    """
    Zero a[p, q] in place with a complex Jacobi rotation G = P R.

    P = diag(1, e^{-i phi}) removes the phase of a[p, q]; R is the real
    symmetric Jacobi rotation on the resulting real 2x2 block.
    """
    apq = a[p, q]
    magnitude = abs(apq)
    if magnitude == 0.0:
        return

    phase = apq / magnitude
    app = a[p, p].real
    aqq = a[q, q].real

    theta = (aqq - app) / (2.0 * magnitude)
    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
    if theta < 0.0:
        t = -t
    c = 1.0 / math.sqrt(t * t + 1.0)
    s = t * c

    g = np.array(
        [[c, s], [-s * np.conj(phase), c * np.conj(phase)]],
        dtype=np.complex128,
    )
    cols = [p, q]
    a[:, cols] = a[:, cols] @ g
    a[cols, :] = g.conj().T @ a[cols, :]

    a[p, q] = 0.0
    a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real


def jacobi_eigenvalues(a: ComplexMatrix, tol: float = None, max_sweeps: int = None) -> np.ndarray:
    """
    Eigenvalues of a Hermitian matrix by cyclic Jacobi sweeps.

    Sweeps visit every (p, q) pair with p < q in row order and stop once
    the off-diagonal Frobenius norm is at most tol * max(1, ||a||_F).

    Args:
        a: Hermitian matrix (not modified)
        tol: Off-diagonal stopping tolerance (config numerics.jacobi_tol)
        max_sweeps: Sweep budget (config numerics.jacobi_max_sweeps)

    Returns:
        Unsorted real eigenvalues

    Raises:
        ConvergenceError: If the budget runs out first.
    """
    tol = config.numerics["jacobi_tol"] if tol is None else tol
    max_sweeps = config.numerics["jacobi_max_sweeps"] if max_sweeps is None else max_sweeps

    work = np.array(a, dtype=np.complex128, copy=True)
    dim = work.shape[0]
    threshold = tol * max(1.0, float(np.linalg.norm(work, ord="fro")))

    for sweep in range(max_sweeps):
        off = _off_diagonal_norm(work)
        if off <= threshold:
            logger.debug(f"Jacobi converged: dim={dim}, sweeps={sweep}, off={off:.2e}")
            return np.real(np.diag(work)).copy()
        for p in range(dim - 1):
            for q in range(p + 1, dim):
                _jacobi_rotate(work, p, q)

    off = _off_diagonal_norm(work)
    if off <= threshold:
        return np.real(np.diag(work)).copy()
    raise ConvergenceError(
        f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal norm {off:.3e})"
    )


def hermitian_eigenvalues(a: ComplexMatrix, tol: float = None, method: str = None) -> np.ndarray:
    """
    Real eigenvalues of a Hermitian matrix, sorted descending.

    Args:
        a: Matrix, Hermitian within tol
        tol: Hermiticity tolerance (config numerics.hermitian_tol)
        method: "jacobi" (cyclic Jacobi) or "lapack" (numpy eigvalsh);
                defaults to config numerics.eigensolver

    Returns:
        Array of dim eigenvalues, largest first

    Raises:
        InvalidStateError: If a is not Hermitian within tol.
        ConvergenceError: If the Jacobi sweep budget runs out.
        ParameterError: For an unknown method.
    """
    a = as_matrix(a)
    tol = config.numerics["hermitian_tol"] if tol is None else tol
    method = method or config.numerics["eigensolver"]

    if not validate_hermitian(a, tol):
        raise InvalidStateError(f"Matrix is not Hermitian within {tol:.1e}")

    # Symmetrize so both solvers see an exactly Hermitian input.
    sym = 0.5 * (a + adjoint(a))

    if method == "jacobi":
        values = jacobi_eigenvalues(sym)
    elif method == "lapack":
        values = np.linalg.eigvalsh(sym)
    else:
        raise ParameterError(f"Unknown eigensolver: {method!r} (use 'jacobi' or 'lapack')")

    return np.sort(values)[::-1].copy()
