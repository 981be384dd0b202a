"""
Partition Factory

Qubit -> environment assignments for tests: the four named presets and
random contiguous partitions.

Usage:
    from data.factories import PartitionFactory

    for part in PartitionFactory.presets():
        ...
    part = PartitionFactory.random_partition(5, rng)
"""

from typing import List

import numpy as np

from dephasim.model import Partition
from utils.constants import PRESET_ORDER
from utils.logger import get_logger

logger = get_logger(__name__)


class PartitionFactory:
    """Factory for Partition objects."""

    @staticmethod
    def presets(n_qubits: int = 4) -> List[Partition]:
        """cse, bse, tse, ise in order of increasing environment count."""
        return [Partition.preset(name, n_qubits) for name in PRESET_ORDER]

    @staticmethod
    def random_partition(n_qubits: int, rng: np.random.Generator) -> Partition:
        """
        Uniformly random labels relabelled to contiguous ids.

        Example:
            PartitionFactory.random_partition(4, np.random.default_rng(3))
        """
        labels = rng.integers(0, n_qubits, size=n_qubits)
        partition = Partition.from_labels(labels.tolist())
        logger.debug(f"Random partition: {partition.assignments}")
        return partition

    @staticmethod
    def single_qubit_envs(n_qubits: int) -> Partition:
        """Every qubit its own environment."""
        return Partition(tuple(range(n_qubits)))
