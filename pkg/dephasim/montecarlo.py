"""
Monte Carlo Trajectory Oracle

Independent check of the averaged channel: sample one noise phase per
environment, build the explicit unitary U = (x)_n exp(-i lambda phi_{e(n)} sigma_x),
and average U rho0 U^dagger.

Two phase schemes:
- direct-phase: phi ~ Normal(0, beta(g, t))
- ou-path: integrate a stationary OU path (exact AR(1) update, trapezoid rule)

Reproducibility contract: samples are drawn in fixed-size blocks whose
random streams are keyed by (seed, block index) through
numpy.random.SeedSequence. Block size depends only on the Hilbert
dimension, and block partial sums are combined by a pairwise tree in
block order, so any worker count gives bit-identical estimates.

Usage:
    from dephasim.montecarlo import TrajectoryConfig, mc_evolve

    estimate, stderr = mc_evolve(rho0, partition, noise, 2.0, TrajectoryConfig(samples=10_000, seed=42))
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from config.settings import config
from dephasim import linalg
from dephasim.errors import ParameterError
from dephasim.model import NoiseParams, Partition, beta
from utils.decorators import measure_performance
from utils.logger import get_logger

logger = get_logger(__name__)


class PhaseScheme(str, Enum):
    """How a noise phase is sampled."""

    DIRECT_PHASE = "direct-phase"
    OU_PATH = "ou-path"


@dataclass(frozen=True)
class TrajectoryConfig:
    """
    Monte Carlo settings.

    Attributes:
        samples: Number of phase tuples M (>= 1)
        seed: Unsigned 64-bit root seed
        dt: OU path step (> 0); unused by direct-phase
        scheme: PhaseScheme
    """

    samples: int
    seed: int = 42
    dt: float = 1e-3
    scheme: PhaseScheme = PhaseScheme.DIRECT_PHASE

    def __post_init__(self):
        if self.samples < 1:
            raise ParameterError(f"samples must be >= 1, got {self.samples}")
        if not (0 <= self.seed < 2 ** 64):
            raise ParameterError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if not (self.dt > 0.0):
            raise ParameterError(f"dt must be positive, got {self.dt}")
        object.__setattr__(self, "scheme", PhaseScheme(self.scheme))

    @classmethod
    def from_config(cls, **overrides) -> "TrajectoryConfig":
        """Defaults from config.montecarlo, overridden by keyword."""
        defaults = config.montecarlo
        values = {
            "samples": defaults["samples"],
            "seed": defaults["seed"],
            "dt": defaults["dt"],
            "scheme": defaults["scheme"],
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


# ==================== RANDOM STREAMS ====================

def block_rng(seed: int, block: int) -> np.random.Generator:
    """Generator for one block, keyed by (seed, block index)."""
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(block,)))


def block_bounds(samples: int, block_size: int) -> List[Tuple[int, int]]:
    """[start, stop) sample ranges for each block."""
    return [(start, min(start + block_size, samples)) for start in range(0, samples, block_size)]


def pairwise_sum(parts: Sequence):
    """
    Sum in a fixed pairwise tree over the sequence order.

    Example:
        pairwise_sum([a, b, c, d]) == (a + b) + (c + d)
    """
    parts = list(parts)
    if not parts:
        raise ParameterError("pairwise_sum needs at least one term")
    while len(parts) > 1:
        paired = [parts[i] + parts[i + 1] for i in range(0, len(parts) - 1, 2)]
        if len(parts) % 2:
            paired.append(parts[-1])
        parts = paired
    return parts[0]


# ==================== PHASE SAMPLING ====================

def sample_phase_direct(rng: np.random.Generator, beta_value: float, size=None):
    """
    Draw phi ~ Normal(0, beta_value).

    Raises:
        ParameterError: If beta_value is negative.
    """
    if not (beta_value >= 0.0):
        raise ParameterError(f"Phase variance must be non-negative, got {beta_value}")
    if beta_value == 0.0:
        return 0.0 if size is None else np.zeros(size)
    return rng.normal(0.0, math.sqrt(beta_value), size=size)


def _ou_steps(t: float, dt: float) -> Tuple[int, float]:
    if not (dt > 0.0):
        raise ParameterError(f"dt must be positive, got {dt}")
    if not (t > 0.0):
        raise ParameterError(f"t must be positive for an OU path, got {t}")
    if dt > t:
        raise ParameterError(f"dt={dt} exceeds t={t}")
    steps = max(1, int(round(t / dt)))
    return steps, t / steps


def integrate_ou_path(delta0, etas: Iterable, g: float, h: float):
    """
    Trapezoid integral of a stationary OU path driven by given normals.

    Delta_{k+1} = a Delta_k + sqrt((g/2)(1 - a^2)) eta_k with a = e^{-g h}.

    Args:
        delta0: Initial value(s), shape () or (paths,)
        etas: Iterable of standard normals, one scalar or (paths,) array per step
        g: Inverse correlation time
        h: Step length

    Returns:
        phi = integral of Delta over [0, steps*h]
    """
    a = math.exp(-g * h)
    kick = math.sqrt(0.5 * g * (1.0 - a * a))
    delta = np.asarray(delta0, dtype=float)
    phi = np.zeros_like(delta)
    for eta in etas:
        nxt = a * delta + kick * eta
        phi = phi + 0.5 * h * (delta + nxt)
        delta = nxt
    return phi


def ou_path_phases(rng: np.random.Generator, noise: NoiseParams, t: float, dt: float, paths: int) -> np.ndarray:
    """Integrated phases of `paths` independent stationary OU paths."""
    steps, h = _ou_steps(t, dt)
    delta0 = rng.normal(0.0, math.sqrt(0.5 * noise.g), size=paths)
    # Lazy draws keep memory at O(paths).
    etas = (rng.standard_normal(paths) for _ in range(steps))
    return integrate_ou_path(delta0, etas, noise.g, h)


def ou_path_phase(rng: np.random.Generator, noise: NoiseParams, t: float, dt: float) -> float:
    """
    One integrated OU phase phi(t) = int_0^t Delta(s) ds.

    Delta starts from its stationary law Normal(0, g/2).

    Raises:
        ParameterError: If dt <= 0, t <= 0 or dt > t.
    """
    return float(ou_path_phases(rng, noise, t, dt, 1)[0])


# ==================== UNITARIES ====================

def _qubit_rotations(angles: np.ndarray) -> np.ndarray:
    """exp(-i a sigma_x) = cos a I - i sin a sigma_x for a batch of angles, shape (B, 2, 2)."""
    c = np.cos(angles)
    s = np.sin(angles)
    rot = np.empty(angles.shape + (2, 2), dtype=np.complex128)
    rot[..., 0, 0] = c
    rot[..., 1, 1] = c
    rot[..., 0, 1] = -1j * s
    rot[..., 1, 0] = -1j * s
    return rot


def unitary_for_phases(phases: Sequence[float], partition: Partition, lambda_: float, n_qubits: int) -> linalg.ComplexMatrix:
    """
    Tensor product over qubits of exp(-i lambda phi_{e(n)} sigma_x).

    Raises:
        ParameterError: If phases has the wrong length or n_qubits disagrees.
    """
    phases = np.asarray(phases, dtype=float)
    if phases.shape != (partition.n_envs,):
        raise ParameterError(f"Expected {partition.n_envs} phases, got shape {phases.shape}")
    if n_qubits != partition.n_qubits:
        raise ParameterError(f"Partition covers {partition.n_qubits} qubits, asked for {n_qubits}")
    angles = lambda_ * phases[list(partition.assignments)]
    return linalg.kron_all(_qubit_rotations(angles))


def unitaries_for_phases(phases: np.ndarray, partition: Partition, lambda_: float) -> np.ndarray:
    """
    Batched unitary_for_phases.

    Args:
        phases: Shape (B, n_envs)

    Returns:
        Unitaries, shape (B, d, d)
    """
    phases = np.asarray(phases, dtype=float)
    if phases.ndim != 2 or phases.shape[1] != partition.n_envs:
        raise ParameterError(f"Expected phases of shape (B, {partition.n_envs}), got {phases.shape}")
    angles = lambda_ * phases[:, list(partition.assignments)]
    rotations = _qubit_rotations(angles)
    batch = phases.shape[0]
    u = rotations[:, 0]
    for q in range(1, partition.n_qubits):
        r = rotations[:, q]
        u = np.einsum("bij,bkl->bikjl", u, r).reshape(batch, u.shape[1] * 2, u.shape[2] * 2)
    return u


# ==================== AVERAGING ====================

def _block_size(dim: int) -> int:
    """Samples per block: depends only on the dimension."""
    return max(1, config.montecarlo["block_elements"] // (dim * dim))


def _block_phases(rng: np.random.Generator, size: int, partition: Partition, noise: NoiseParams,
                  t: float, cfg: TrajectoryConfig) -> np.ndarray:
    n_envs = partition.n_envs
    if cfg.scheme is PhaseScheme.DIRECT_PHASE:
        return np.asarray(sample_phase_direct(rng, beta(noise, t), size=(size, n_envs)), dtype=float)
    if t == 0.0:
        return np.zeros((size, n_envs))
    return ou_path_phases(rng, noise, t, cfg.dt, size * n_envs).reshape(size, n_envs)


def _block_moments(rho0: np.ndarray, partition: Partition, noise: NoiseParams, t: float,
                   cfg: TrajectoryConfig, block: int, size: int) -> Tuple[np.ndarray, np.ndarray]:
    rng = block_rng(cfg.seed, block)
    phases = _block_phases(rng, size, partition, noise, t, cfg)
    u = unitaries_for_phases(phases, partition, noise.lambda_)
    states = u @ rho0 @ np.conj(np.swapaxes(u, 1, 2))
    return states.sum(axis=0), (np.abs(states) ** 2).sum(axis=0)


@measure_performance
def mc_evolve(
    rho0: linalg.ComplexMatrix,
    partition: Partition,
    noise: NoiseParams,
    t: float,
    cfg: TrajectoryConfig,
    threads: int = None,
) -> Tuple[linalg.ComplexMatrix, float]:
    """
    Sample-average of U rho0 U^dagger over cfg.samples phase tuples.

    Args:
        rho0: Initial density matrix
        partition: Qubit -> environment assignment (one phase per env)
        noise: Noise parameters
        t: Time, >= 0
        cfg: Sample count, seed, scheme and path step
        threads: Worker count (config.threads if None); does not change results

    Returns:
        (estimate, standard error), where the standard error is the
        Frobenius norm of the element-wise sample standard deviation
        divided by sqrt(M).
    """
    rho0 = linalg.as_matrix(rho0)
    if not (t >= 0.0):
        raise ParameterError(f"t must be non-negative, got {t}")
    if linalg.n_qubits_of(rho0) != partition.n_qubits:
        raise ParameterError("State and partition disagree on the qubit count")

    samples = cfg.samples
    bounds = block_bounds(samples, _block_size(rho0.shape[0]))
    threads = config.threads if threads is None else threads
    logger.info(
        f"Monte Carlo: {samples} samples in {len(bounds)} blocks, scheme={cfg.scheme.value}, "
        f"partition={partition.label}, g={noise.g}, t={t}, seed={cfg.seed}"
    )

    def run(item):
        block, (start, stop) = item
        return _block_moments(rho0, partition, noise, t, cfg, block, stop - start)

    if threads <= 1 or len(bounds) == 1:
        moments = [run(item) for item in enumerate(bounds)]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            moments = list(pool.map(run, enumerate(bounds)))

    total = pairwise_sum([m[0] for m in moments])
    total_sq = pairwise_sum([m[1] for m in moments])

    mean = total / samples
    # Restore exact Hermiticity lost to rounding in the sum.
    mean = 0.5 * (mean + linalg.adjoint(mean))
    if samples > 1:
        variance = np.maximum(total_sq / samples - np.abs(total / samples) ** 2, 0.0) * samples / (samples - 1)
        stderr = float(np.sqrt(variance.sum()) / math.sqrt(samples))
    else:
        stderr = float("inf")
    return mean, stderr


# ==================== OU VARIANCE CHECK ====================

@dataclass(frozen=True)
class VarianceReport:
    """Empirical Var[phi(t)] against beta(g, t)."""

    g: float
    t: float
    dt: float
    paths: int
    empirical: float
    expected: float
    stderr: float

    @property
    def rel_error(self) -> float:
        return abs(self.empirical - self.expected) / self.expected if self.expected else abs(self.empirical)


@measure_performance
def ou_variance_check(noise: NoiseParams, t: float, dt: float, paths: int, seed: int) -> VarianceReport:
    """
    Empirical variance of integrated OU phases, blocked like mc_evolve.

    The standard error uses the Gaussian estimate sqrt(2/(M-1)) * Var.
    """
    if paths < 2:
        raise ParameterError(f"Need at least 2 paths, got {paths}")
    block_size = _block_size(1)
    parts = []
    for block, (start, stop) in enumerate(block_bounds(paths, block_size)):
        phi = ou_path_phases(block_rng(seed, block), noise, t, dt, stop - start)
        parts.append(np.array([phi.sum(), (phi * phi).sum()]))
    s, s2 = pairwise_sum(parts)
    mean = s / paths
    var = (s2 / paths - mean * mean) * paths / (paths - 1)
    report = VarianceReport(
        g=noise.g, t=t, dt=dt, paths=paths,
        empirical=float(var), expected=beta(noise, t),
        stderr=float(var * math.sqrt(2.0 / (paths - 1))),
    )
    logger.info(
        f"OU variance: g={noise.g}, t={t}, empirical={report.empirical:.6f}, "
        f"beta={report.expected:.6f}, rel_error={report.rel_error:.4f}"
    )
    return report
