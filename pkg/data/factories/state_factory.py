"""
State Factory

Random valid density matrices for property tests.
Every method takes an explicit numpy Generator or seed so a failing case
can be replayed exactly.

Usage:
    from data.factories import StateFactory

    rho = StateFactory.random_mixture(4, rank=3, rng=np.random.default_rng(7))
    states = StateFactory.batch(100, n_qubits=4, seed=2024)
"""

from typing import List

import numpy as np

from dephasim import linalg
from dephasim.model import InitialState, initial_density
from utils.logger import get_logger

logger = get_logger(__name__)


class StateFactory:
    """Factory for random density matrices (mixtures of random pure states)."""

    @staticmethod
    def random_ket(n_qubits: int, rng: np.random.Generator) -> np.ndarray:
        """
        Haar-random normalized state vector.

        Args:
            n_qubits: Register size
            rng: Random generator

        Returns:
            Complex vector of length 2^n with unit norm
        """
        dim = linalg.qubit_dim(n_qubits)
        psi = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        return psi / np.linalg.norm(psi)

    @staticmethod
    def random_pure_state(n_qubits: int, rng: np.random.Generator) -> linalg.ComplexMatrix:
        """|psi><psi| for a Haar-random psi."""
        psi = StateFactory.random_ket(n_qubits, rng)
        return np.outer(psi, psi.conj())

    @staticmethod
    def random_mixture(n_qubits: int, rank: int, rng: np.random.Generator) -> linalg.ComplexMatrix:
        """
        Convex mixture of `rank` random pure states with Dirichlet weights.

        Example:
            rho = StateFactory.random_mixture(4, rank=2, rng=np.random.default_rng(1))
        """
        weights = rng.dirichlet(np.ones(rank))
        rho = sum(w * StateFactory.random_pure_state(n_qubits, rng) for w in weights)
        # Exact Hermiticity and unit trace; rounding in the sum breaks both slightly.
        rho = 0.5 * (rho + rho.conj().T)
        return rho / np.trace(rho).real

    @staticmethod
    def batch(count: int, n_qubits: int = 4, seed: int = 0, max_rank: int = 4) -> List[linalg.ComplexMatrix]:
        """
        `count` random mixtures with ranks cycling through 1..max_rank.

        Args:
            count: Number of states
            n_qubits: Register size
            seed: Root seed
            max_rank: Largest mixture rank
        """
        rng = np.random.default_rng(seed)
        states = [
            StateFactory.random_mixture(n_qubits, 1 + i % max_rank, rng)
            for i in range(count)
        ]
        logger.debug(f"Created {count} random {n_qubits}-qubit states (seed={seed})")
        return states

    @staticmethod
    def ghz_mixture(n_qubits: int = 4, p: float = 1.0) -> linalg.ComplexMatrix:
        """(1 - p) I/d + p |GHZ><GHZ|."""
        return initial_density(InitialState(n_qubits, p))

    @staticmethod
    def maximally_mixed(n_qubits: int = 4) -> linalg.ComplexMatrix:
        """I/d."""
        dim = linalg.qubit_dim(n_qubits)
        return linalg.identity(dim) / dim
