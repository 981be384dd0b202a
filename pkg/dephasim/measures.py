"""
Measures

Entanglement witness, purity and spectral (von Neumann) entropy of a
density matrix, time series of all three, and saturation detection.

Conventions:
- Witness: EW = -Tr[(I/2 - rho0) rho]; positive values detect GHZ-class
  entanglement relative to the initial state rho0.
- Purity: Tr[rho^2].
- Entropy: -sum lambda_i log lambda_i in nats by default (bits on request).

Usage:
    from dephasim.measures import entanglement_witness, purity, shannon_entropy

    entanglement_witness(rho, rho0)
    shannon_entropy(rho, base=EntropyBase.TWO)
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from config.settings import config
from dephasim import linalg
from dephasim.errors import DimensionError, InvalidStateError, ParameterError
from utils.constants import LN2
from utils.logger import get_logger
from utils.validators import validate_ascending

logger = get_logger(__name__)


class EntropyBase(str, Enum):
    """Logarithm base for entropy."""

    NATURAL = "natural"
    TWO = "two"

    @classmethod
    def parse(cls, text: str) -> "EntropyBase":
        """Accept 'natural'/'nats'/'e' and 'two'/'bits'/'2'."""
        key = str(text).lower()
        if key in ("natural", "nats", "nat", "e"):
            return cls.NATURAL
        if key in ("two", "bits", "bit", "2"):
            return cls.TWO
        raise ParameterError(f"Unknown entropy base {text!r} (use nats or bits)")


# ==================== POINT MEASURES ====================

def entanglement_witness(rho: linalg.ComplexMatrix, rho0: linalg.ComplexMatrix) -> float:
    """
    EW = -Tr[(I/2 - rho0) rho] = Tr[rho0 rho] - Tr[rho]/2.

    Raises:
        DimensionError: If the two matrices differ in size.

    Example:
        entanglement_witness(ghz, ghz)   # 0.5
    """
    if rho.shape != rho0.shape:
        raise DimensionError(f"Dimension mismatch: {rho.shape} vs {rho0.shape}")
    overlap = np.sum(rho0 * rho.T)
    return float(np.real(overlap - 0.5 * np.trace(rho)))


def purity(rho: linalg.ComplexMatrix) -> float:
    """Tr[rho^2], in [1/d, 1] for a density matrix."""
    return float(np.real(np.sum(rho * rho.T)))


def linear_entropy(rho: linalg.ComplexMatrix) -> float:
    """1 - Tr[rho^2]."""
    return 1.0 - purity(rho)


def clamped_spectrum(rho: linalg.ComplexMatrix) -> np.ndarray:
    """
    Eigenvalues with rounding negatives in [clamp_floor, 0) set to 0.

    Raises:
        InvalidStateError: If an eigenvalue lies below clamp_floor.
    """
    values = linalg.hermitian_eigenvalues(rho)
    floor = config.numerics["clamp_floor"]
    smallest = float(values[-1])
    if smallest < floor:
        raise InvalidStateError(f"State is not positive semidefinite: eigenvalue {smallest:.3e}")
    if smallest < 0.0:
        logger.debug(f"Clamping eigenvalues down to {smallest:.2e}")
    return np.where(values < 0.0, 0.0, values)


def shannon_entropy(rho: linalg.ComplexMatrix, base: EntropyBase = EntropyBase.NATURAL) -> float:
    """
    -sum lambda_i log lambda_i over the spectrum, with 0 log 0 = 0.

    Args:
        rho: Density matrix
        base: NATURAL (nats) or TWO (bits)

    Returns:
        Entropy in [0, log d]
    """
    values = clamped_spectrum(rho)
    positive = values[values > 0.0]
    nats = float(-np.sum(positive * np.log(positive)))
    nats = max(nats, 0.0)
    if EntropyBase(base) is EntropyBase.TWO:
        return nats / LN2
    return nats


# ==================== SERIES ====================

@dataclass(frozen=True)
class MeasureSeries:
    """
    EW(t), P(t), H(t) on a time grid.

    betas holds the per-environment phase variance at each time, shape
    (len(times), n_envs), when known.
    """

    times: np.ndarray
    ew: np.ndarray
    purity: np.ndarray
    entropy: np.ndarray
    betas: Optional[np.ndarray] = None
    base: EntropyBase = EntropyBase.NATURAL
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        n = len(self.times)
        for name in ("ew", "purity", "entropy"):
            if len(getattr(self, name)) != n:
                raise ParameterError(f"Column {name} has {len(getattr(self, name))} rows, expected {n}")
        if self.betas is not None and len(self.betas) != n:
            raise ParameterError(f"betas has {len(self.betas)} rows, expected {n}")

    def __len__(self) -> int:
        return len(self.times)

    def column(self, name: str) -> np.ndarray:
        """Column by name: t/times, ew, purity/p, entropy/h."""
        aliases = {"t": "times", "p": "purity", "h": "entropy", "entropy_nats": "entropy"}
        key = aliases.get(name, name)
        if key not in ("times", "ew", "purity", "entropy"):
            raise ParameterError(f"Unknown measure column {name!r}")
        return getattr(self, key)


def measure_series(
    states: Sequence[linalg.ComplexMatrix],
    rho0: linalg.ComplexMatrix,
    times: Sequence[float],
    betas: Optional[np.ndarray] = None,
    base: EntropyBase = EntropyBase.NATURAL,
) -> MeasureSeries:
    """Evaluate EW, purity and entropy for every state."""
    if len(states) != len(times):
        raise ParameterError(f"{len(states)} states for {len(times)} times")
    return MeasureSeries(
        times=np.asarray(times, dtype=float),
        ew=np.array([entanglement_witness(rho, rho0) for rho in states], dtype=float),
        purity=np.array([purity(rho) for rho in states], dtype=float),
        entropy=np.array([shannon_entropy(rho, base) for rho in states], dtype=float),
        betas=None if betas is None else np.asarray(betas, dtype=float),
        base=EntropyBase(base),
    )


# ==================== SATURATION ====================

@dataclass(frozen=True)
class SaturationReport:
    """
    Asymptotic level and first entry time into the band around it.

    saturation_time is None when the band is never entered on the grid.
    """

    level: float
    saturation_time: Optional[float]
    rel_threshold: float

    @property
    def beyond_grid(self) -> bool:
        return self.saturation_time is None

    def format_time(self, t_max: float) -> str:
        """Saturation time, or '>t_max' when beyond the grid."""
        if self.saturation_time is None:
            return f">{t_max:g}"
        return f"{self.saturation_time:.12g}"


def saturation(
    times: Sequence[float],
    values: Sequence[float],
    asymptote: float,
    rel_threshold: float = None,
) -> SaturationReport:
    """
    First grid time with |m(t) - asymptote| <= rel_threshold * |m(0) - asymptote|.

    Args:
        times: Ascending grid
        values: Measure on that grid (monotone in t)
        asymptote: Limit level
        rel_threshold: Band width in (0, 1) (config saturation.rel_threshold)

    Raises:
        ParameterError: If the series is empty, lengths differ, or the
            threshold is outside (0, 1).
    """
    rel_threshold = config.saturation["rel_threshold"] if rel_threshold is None else rel_threshold
    if not (0.0 < rel_threshold < 1.0):
        raise ParameterError(f"rel_threshold must lie in (0, 1), got {rel_threshold}")
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    if len(values) == 0:
        raise ParameterError("Cannot detect saturation in an empty series")
    if len(times) != len(values):
        raise ParameterError(f"{len(times)} times for {len(values)} values")
    if not validate_ascending(times):
        raise ParameterError("Time grid must be ascending")

    band = rel_threshold * abs(values[0] - asymptote)
    inside = np.nonzero(np.abs(values - asymptote) <= band)[0]
    saturation_time = float(times[inside[0]]) if inside.size else None
    return SaturationReport(level=float(asymptote), saturation_time=saturation_time, rel_threshold=rel_threshold)


def witness_crossing(series: MeasureSeries) -> Optional[float]:
    """First grid time at which EW < 0 (no longer detects entanglement), else None."""
    negative = np.nonzero(series.ew < 0.0)[0]
    if negative.size == 0:
        return None
    return float(series.times[negative[0]])


def max_entropy(dim: int) -> float:
    """log d in nats."""
    return math.log(dim)
