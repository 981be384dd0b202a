"""
Gaussian-Averaged Dephasing Channel

Each qubit n evolves under exp(-i lambda phi_{e(n)} sigma_x), with one
Gaussian phase phi_e of variance beta_e per environment. In the
sigma-x eigenbasis (H^{(x)n} conjugation) the average is diagonal:

    rho~'[r, c] = rho~[r, c] * prod_e exp(-lambda^2 beta_e (s_e(r) - s_e(c))^2 / 2)

so the channel is a Schur product with a Gaussian kernel F between two
Hadamard transforms. F is PSD with unit diagonal, so the output stays a
density matrix.

Usage:
    from dephasim.channel import evolve, asymptotic
    from dephasim.model import NoiseParams, Partition, ghz_density

    rho_t = evolve(ghz_density(4), Partition.preset("cse"), NoiseParams(g=1.0), 2.0)
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from config.settings import config
from dephasim import linalg
from dephasim.errors import DimensionError, InvalidStateError, ParameterError
from dephasim.model import NoiseParams, Partition, beta
from utils.logger import get_logger
from utils.validators import validate_ascending, validate_hermitian, validate_unit_trace

logger = get_logger(__name__)


@dataclass(frozen=True)
class DephasingChannel:
    """
    Averaged dephasing map for a fixed partition and phase variances.

    Attributes:
        partition: Qubit -> environment assignment
        betas: One phase variance per environment (>= 0)
        lambda_: Coupling; enters as lambda^2 * beta
    """

    partition: Partition
    betas: tuple
    lambda_: float = 1.0

    def __post_init__(self):
        betas = tuple(float(b) for b in self.betas)
        if len(betas) != self.partition.n_envs:
            raise ParameterError(
                f"Expected {self.partition.n_envs} phase variances, got {len(betas)}"
            )
        if any(not (b >= 0.0) for b in betas):
            raise ParameterError(f"Phase variances must be non-negative, got {betas}")
        if not (self.lambda_ >= 0.0):
            raise ParameterError(f"lambda must be non-negative, got {self.lambda_}")
        object.__setattr__(self, "betas", betas)

    @classmethod
    def at_time(cls, partition: Partition, noise: NoiseParams, t: float) -> "DephasingChannel":
        """Channel after time t: every environment carries beta(noise, t)."""
        b = beta(noise, t)
        return cls(partition, (b,) * partition.n_envs, noise.lambda_)

    def then(self, other: "DephasingChannel") -> "DephasingChannel":
        """Composition: apply self, then other (variances add)."""
        if other.partition != self.partition or other.lambda_ != self.lambda_:
            raise ParameterError("Only channels on the same partition and coupling compose")
        return DephasingChannel(
            self.partition,
            tuple(a + b for a, b in zip(self.betas, other.betas)),
            self.lambda_,
        )

    def apply(self, rho: linalg.ComplexMatrix) -> linalg.ComplexMatrix:
        """Apply the channel to a state on partition.n_qubits qubits."""
        _check_state(rho)
        n_qubits = linalg.n_qubits_of(rho)
        if n_qubits != self.partition.n_qubits:
            raise DimensionError(
                f"State has {n_qubits} qubits, partition covers {self.partition.n_qubits}"
            )
        rotated = hadamard_transform(rho)
        return hadamard_transform(linalg.schur(rotated, decay_matrix(self, n_qubits)))


# ==================== BASIS CHANGE ====================

def hadamard_transform(rho: linalg.ComplexMatrix) -> linalg.ComplexMatrix:
    """
    Conjugate by H^{(x)n}, H = [[1, 1], [1, -1]]/sqrt(2).

    Applied qubit by qubit on the (2,)*2n tensor view, O(n d^2). The map
    is an involution.

    Raises:
        DimensionError: If the dimension is not a power of two.
    """
    rho = linalg.as_matrix(rho)
    n = linalg.n_qubits_of(rho)
    if n == 0:
        return rho.copy()

    tensor = rho.reshape((2,) * (2 * n))
    h = linalg.HADAMARD
    for axis in range(2 * n):
        # H is real symmetric: the same contraction serves rows and columns.
        tensor = np.moveaxis(np.tensordot(h, tensor, axes=([1], [axis])), 0, axis)
    return np.ascontiguousarray(tensor.reshape(rho.shape))


# ==================== DECAY KERNEL ====================

def _weighted_gaps(partition: Partition, weights: Sequence[float]) -> np.ndarray:
    """sum_e w_e (s_e(r) - s_e(c))^2 as a (d, d) float matrix."""
    table = partition.collective_table
    dim = table.shape[1]
    total = np.zeros((dim, dim), dtype=float)
    # One environment at a time keeps memory at O(d^2) for 12 qubits.
    for env, w in enumerate(weights):
        if w == 0.0:
            continue
        gap = (table[env][:, None] - table[env][None, :]).astype(float)
        total += w * gap * gap
    return total


def decay_matrix(channel: DephasingChannel, n_qubits: int) -> np.ndarray:
    """
    Gaussian kernel F[r, c] = prod_e exp(-lambda^2 beta_e (s_e(r) - s_e(c))^2 / 2).

    Real, symmetric, unit diagonal, PSD.

    Raises:
        DimensionError: If n_qubits disagrees with the partition.
    """
    if n_qubits != channel.partition.n_qubits:
        raise DimensionError(
            f"Partition covers {channel.partition.n_qubits} qubits, asked for {n_qubits}"
        )
    exponent = _weighted_gaps(channel.partition, channel.betas)
    return np.exp(-0.5 * channel.lambda_ ** 2 * exponent)


def asymptotic_mask(partition: Partition) -> np.ndarray:
    """beta -> infinity limit of F: 1 where s_e(r) = s_e(c) for all e, else 0."""
    return (_weighted_gaps(partition, [1.0] * partition.n_envs) == 0.0).astype(float)


# ==================== EVOLUTION ====================

def _check_state(rho: linalg.ComplexMatrix) -> None:
    tol_h = config.numerics["hermitian_tol"]
    tol_t = config.numerics["trace_tol"]
    if not validate_hermitian(rho, tol_h):
        raise InvalidStateError(f"Initial state is not Hermitian within {tol_h:.1e}")
    if not validate_unit_trace(rho, tol_t):
        raise InvalidStateError(f"Initial state trace deviates from 1 by more than {tol_t:.1e}")


def evolve(
    rho0: linalg.ComplexMatrix,
    partition: Partition,
    noise: NoiseParams,
    t: float,
) -> linalg.ComplexMatrix:
    """
    Averaged state at time t.

    Args:
        rho0: Initial density matrix on partition.n_qubits qubits
        partition: Qubit -> environment assignment
        noise: OU noise parameters (epsilon has no effect)
        t: Time, >= 0

    Returns:
        Density matrix rho(t)

    Raises:
        InvalidStateError: If rho0 is not Hermitian with unit trace (1e-9).
        ParameterError: If t < 0.
    """
    rho0 = linalg.as_matrix(rho0)
    return DephasingChannel.at_time(partition, noise, t).apply(rho0)


def evolve_series(
    rho0: linalg.ComplexMatrix,
    partition: Partition,
    noise: NoiseParams,
    t_grid: Sequence[float],
    threads: int = None,
) -> List[linalg.ComplexMatrix]:
    """
    evolve() at every grid time.

    The Hadamard transform of rho0 and the gap matrix are computed once.
    Grid points are independent, so they may be split across threads;
    each point's arithmetic is the same regardless of schedule.

    Args:
        rho0: Initial density matrix
        partition: Qubit -> environment assignment
        noise: Noise parameters
        t_grid: Non-decreasing, non-negative times
        threads: Worker count (config.threads if None)

    Raises:
        ParameterError: If the grid is unsorted or has negative times.
    """
    rho0 = linalg.as_matrix(rho0)
    _check_state(rho0)
    times = [float(t) for t in t_grid]
    if not validate_ascending(times):
        raise ParameterError("Time grid must be ascending")
    if times and times[0] < 0.0:
        raise ParameterError(f"Time grid must be non-negative, got {times[0]}")
    if linalg.n_qubits_of(rho0) != partition.n_qubits:
        raise DimensionError("State and partition disagree on the qubit count")

    rotated = hadamard_transform(rho0)
    # All environments share beta(t), so F = exp(-lambda^2 beta Q / 2).
    q = _weighted_gaps(partition, [1.0] * partition.n_envs)
    scale = -0.5 * noise.lambda_ ** 2

    def point(t: float) -> linalg.ComplexMatrix:
        return hadamard_transform(rotated * np.exp(scale * beta(noise, t) * q))

    threads = config.threads if threads is None else threads
    logger.debug(f"evolve_series: {len(times)} points, partition={partition.label}, g={noise.g}, threads={threads}")
    if threads <= 1 or len(times) < 2:
        return [point(t) for t in times]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(point, times))


def asymptotic(rho0: linalg.ComplexMatrix, partition: Partition) -> linalg.ComplexMatrix:
    """
    beta -> infinity limit of the channel (lambda > 0).

    Keeps only the sigma-x coherences between basis states with equal
    collective eigenvalues in every environment. Idempotent.
    """
    rho0 = linalg.as_matrix(rho0)
    _check_state(rho0)
    if linalg.n_qubits_of(rho0) != partition.n_qubits:
        raise DimensionError("State and partition disagree on the qubit count")
    rotated = hadamard_transform(rho0)
    return hadamard_transform(linalg.schur(rotated, asymptotic_mask(partition)))
