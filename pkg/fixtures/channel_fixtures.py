"""
Channel Fixtures

Partitions, noise settings and a scratch output directory.

Fixtures:
- preset_partition: parametrized over cse, bse, tse, ise
- all_partitions: dict of the four presets
- unit_noise: NoiseParams(g=1)
- output_dir: per-test directory for CSV files
"""

import pytest

from data.factories import PartitionFactory
from dephasim.model import NoiseParams, Partition
from utils.constants import PRESET_ORDER
from utils.logger import get_logger

logger = get_logger(__name__)


@pytest.fixture(params=PRESET_ORDER)
def preset_partition(request):
    """
    Each named four-qubit partition in turn.

    Notes:
        - Tests using it run once per preset (ids: cse, bse, tse, ise)
    """
    return Partition.preset(request.param)


@pytest.fixture(scope="session")
def all_partitions():
    """{"cse": Partition, "bse": ..., "tse": ..., "ise": ...}"""
    return {part.label: part for part in PartitionFactory.presets()}


@pytest.fixture
def unit_noise():
    """g = 1, lambda = 1, epsilon = 0."""
    return NoiseParams(g=1.0)


@pytest.fixture
def output_dir(tmp_path):
    """
    Empty directory for files written by a test.

    Yields:
        Path: tmp_path / "out" (created)

    Notes:
        - Built on pytest's tmp_path, so xdist workers never collide
    """
    path = tmp_path / "out"
    path.mkdir()
    logger.debug(f"Output directory: {path}")
    yield path
