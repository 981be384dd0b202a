"""
Model: noise parameters, environment partitions, the OU beta-function,
and initial states.

Bit order is fixed project-wide: qubit 0 is the most significant bit of
a basis index.

Usage:
    from dephasim.model import NoiseParams, Partition, beta, ghz_density

    noise = NoiseParams(g=1.0)
    beta(noise, 2.0)                      # 1.1353352832366128
    Partition.preset("bse").assignments   # (0, 0, 1, 1)
"""

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from dephasim import linalg
from dephasim.errors import DimensionError, InvalidStateError, ParameterError
from utils.constants import BETA_SERIES_CUTOFF, MAX_QUBITS, MIN_QUBITS, PARTITION_PRESETS
from utils.logger import get_logger
from utils.validators import validate_contiguous_ids, validate_probability

logger = get_logger(__name__)


# ==================== NOISE ====================

@dataclass(frozen=True)
class NoiseParams:
    """
    Ornstein-Uhlenbeck noise and coupling parameters.

    Attributes:
        g: Inverse autocorrelation time (> 0)
        lambda_: System-environment coupling (>= 0)
        epsilon: Qubit energy; contributes a global phase only
    """

    g: float
    lambda_: float = 1.0
    epsilon: float = 0.0

    def __post_init__(self):
        if not (self.g > 0.0 and math.isfinite(self.g)):
            raise ParameterError(f"g must be positive and finite, got {self.g}")
        if not (self.lambda_ >= 0.0 and math.isfinite(self.lambda_)):
            raise ParameterError(f"lambda must be non-negative and finite, got {self.lambda_}")
        if not math.isfinite(self.epsilon):
            raise ParameterError(f"epsilon must be finite, got {self.epsilon}")


def beta(noise: NoiseParams, t: float) -> float:
    """
    Accumulated phase variance of integrated OU noise.

    beta(t) = (1/g) [g t + e^{-g t} - 1], the double integral of the
    autocorrelation (g/2) e^{-g|s - s'|} over [0, t]^2. For g t below
    1e-6 the Taylor form g t^2/2 - g^2 t^3/6 is used.

    Args:
        noise: Noise parameters (only g is used)
        t: Time, >= 0

    Returns:
        Phase variance (>= 0)

    Raises:
        ParameterError: If t is negative or not finite.

    Example:
        beta(NoiseParams(g=1e-4), 120.0)   # 0.71712864...
    """
    if not (t >= 0.0 and math.isfinite(t)):
        raise ParameterError(f"t must be non-negative and finite, got {t}")

    g = noise.g
    x = g * t
    if x < BETA_SERIES_CUTOFF:
        return g * t * t / 2.0 - g * g * t ** 3 / 6.0
    return (x + math.expm1(-x)) / g


def beta_values(noise: NoiseParams, times: Sequence[float]) -> np.ndarray:
    """beta over a grid of times."""
    return np.array([beta(noise, float(t)) for t in times], dtype=float)


# ==================== PARTITIONS ====================

@dataclass(frozen=True)
class Partition:
    """
    Qubit -> environment assignment.

    assignments[n] is the environment id of qubit n; ids are contiguous
    0..n_envs-1 and every id is used.
    """

    assignments: tuple

    def __post_init__(self):
        assignments = tuple(int(a) for a in self.assignments)
        if not validate_contiguous_ids(assignments):
            raise ParameterError(
                f"Environment ids must be contiguous from 0 with every id used, got {list(self.assignments)}"
            )
        if not (1 <= len(assignments) <= MAX_QUBITS):
            raise ParameterError(f"Partition must cover 1..{MAX_QUBITS} qubits, got {len(assignments)}")
        object.__setattr__(self, "assignments", assignments)

    @property
    def n_qubits(self) -> int:
        return len(self.assignments)

    @property
    def n_envs(self) -> int:
        return max(self.assignments) + 1

    def members(self, env: int) -> tuple:
        """Qubits coupled to environment env."""
        self._check_env(env)
        return tuple(n for n, e in enumerate(self.assignments) if e == env)

    def _check_env(self, env: int) -> None:
        if not (0 <= env < self.n_envs):
            raise ParameterError(f"Environment {env} out of range 0..{self.n_envs - 1}")

    @cached_property
    def collective_table(self) -> np.ndarray:
        """
        Collective sigma-x eigenvalues s_e(b) for every env and basis index.

        Returns:
            Integer array of shape (n_envs, 2^n)
        """
        n = self.n_qubits
        indices = np.arange(2 ** n)
        # signs[q, b] = 1 - 2 * bit_q(b), qubit 0 most significant
        shifts = np.arange(n - 1, -1, -1)
        signs = 1 - 2 * ((indices[None, :] >> shifts[:, None]) & 1)
        table = np.zeros((self.n_envs, 2 ** n), dtype=np.int64)
        for q, env in enumerate(self.assignments):
            table[env] += signs[q]
        return table

    @classmethod
    def preset(cls, name: str, n_qubits: int = 4) -> "Partition":
        """
        Named coupling configuration.

        For four qubits: cse=[0,0,0,0], bse=[0,0,1,1], tse=[0,1,2,2],
        ise=[0,1,2,3]. Other sizes: cse shares one environment, ise gives
        each qubit its own, bse splits into halves, tse gives qubits 0 and 1
        their own environment and shares a third among the rest.

        Raises:
            ParameterError: Unknown name or size the preset cannot cover.
        """
        key = name.lower()
        if key not in PARTITION_PRESETS:
            raise ParameterError(f"Unknown partition preset {name!r}; choose from {sorted(PARTITION_PRESETS)}")
        if n_qubits == 4:
            return cls(PARTITION_PRESETS[key])
        if key == "cse":
            return cls((0,) * n_qubits)
        if key == "ise":
            return cls(tuple(range(n_qubits)))
        if key == "bse":
            if n_qubits < 2:
                raise ParameterError("bse needs at least 2 qubits")
            half = n_qubits // 2
            return cls((0,) * half + (1,) * (n_qubits - half))
        if n_qubits < 3:
            raise ParameterError("tse needs at least 3 qubits")
        return cls((0, 1) + (2,) * (n_qubits - 2))

    @classmethod
    def from_labels(cls, labels: Sequence) -> "Partition":
        """
        Build a partition from arbitrary labels, relabelled by first appearance.

        Repeating a label puts those qubits in the same environment.

        Example:
            Partition.from_labels(["a", "a", "b", "b"]).assignments   # (0, 0, 1, 1)
            Partition.from_labels([5, 5, 5, 5]) == Partition.preset("cse")
        """
        mapping = {}
        for label in labels:
            mapping.setdefault(label, len(mapping))
        return cls(tuple(mapping[label] for label in labels))

    @classmethod
    def parse(cls, text: str, n_qubits: int = 4) -> "Partition":
        """
        Parse a preset name ("cse") or an explicit assignment ("0,0,1,1").

        Explicit assignments must already be contiguous.
        """
        stripped = text.strip()
        if stripped.lower() in PARTITION_PRESETS:
            return cls.preset(stripped, n_qubits)
        try:
            ids = tuple(int(part) for part in stripped.split(","))
        except ValueError as exc:
            raise ParameterError(f"Cannot parse partition {text!r}") from exc
        return cls(ids)

    @property
    def label(self) -> str:
        """Preset name if this is a four-qubit preset, else the comma list."""
        for name, ids in PARTITION_PRESETS.items():
            if ids == self.assignments:
                return name
        return ",".join(str(a) for a in self.assignments)


def collective_eigenvalue(partition: Partition, env: int, basis_index: int) -> int:
    """
    s_e(b) = sum over qubits n in env of (1 - 2 bit_n(b)).

    Raises:
        ParameterError: If env or basis_index is out of range.

    Example:
        collective_eigenvalue(Partition.preset("bse"), 0, 0b0111)   # 0
    """
    partition._check_env(env)
    if not (0 <= basis_index < 2 ** partition.n_qubits):
        raise ParameterError(f"Basis index {basis_index} out of range for {partition.n_qubits} qubits")
    return int(partition.collective_table[env, basis_index])


# ==================== INITIAL STATES ====================

@dataclass(frozen=True)
class InitialState:
    """Werner-type mixture (1 - p) I/d + p |GHZ><GHZ|."""

    n_qubits: int = 4
    p: float = 1.0

    def __post_init__(self):
        _check_qubits(self.n_qubits)
        if not validate_probability(self.p):
            raise InvalidStateError(f"GHZ weight p must lie in [0, 1], got {self.p}")


def _check_qubits(n_qubits: int) -> None:
    if not (MIN_QUBITS <= n_qubits <= MAX_QUBITS):
        raise DimensionError(f"n_qubits must lie in [{MIN_QUBITS}, {MAX_QUBITS}], got {n_qubits}")


def ghz_density(n_qubits: int) -> linalg.ComplexMatrix:
    """
    |GHZ><GHZ| with |GHZ> = (|0...0> + |1...1>)/sqrt(2).

    Exactly four non-zero entries, each 1/2, at the corners.
    """
    _check_qubits(n_qubits)
    dim = linalg.qubit_dim(n_qubits)
    rho = np.zeros((dim, dim), dtype=np.complex128)
    for r in (0, dim - 1):
        for c in (0, dim - 1):
            rho[r, c] = 0.5
    return rho


def initial_density(state: InitialState) -> linalg.ComplexMatrix:
    """(1 - p) I/d + p ghz_density(n)."""
    dim = linalg.qubit_dim(state.n_qubits)
    rho = (1.0 - state.p) * linalg.identity(dim) / dim + state.p * ghz_density(state.n_qubits)
    logger.debug(f"Initial state: n={state.n_qubits}, p={state.p}")
    return rho
