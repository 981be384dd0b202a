"""
State Fixtures

Initial states and random density matrices shared by the test suites.

Fixtures:
- ghz: |GHZ><GHZ| on four qubits (function scope)
- maximally_mixed: I/16 (function scope)
- random_states: 100 seeded random mixtures (session scope)
- rng: seeded numpy Generator (function scope)
"""

import numpy as np
import pytest

from data.factories import StateFactory
from dephasim.model import ghz_density
from utils.logger import get_logger

logger = get_logger(__name__)

RANDOM_STATE_SEED = 20240601
RANDOM_STATE_COUNT = 100


@pytest.fixture
def ghz():
    """
    Four-qubit GHZ density matrix.

    Returns:
        np.ndarray: 16x16 complex matrix with 1/2 in the four corners

    Notes:
        - Function scope: tests may modify their copy
    """
    return ghz_density(4)


@pytest.fixture
def maximally_mixed():
    """Four-qubit I/16."""
    return StateFactory.maximally_mixed(4)


@pytest.fixture(scope="session")
def random_states():
    """
    Seeded random four-qubit density matrices.

    Yields:
        list: RANDOM_STATE_COUNT mixtures of 1..4 random pure states

    Notes:
        - Session scope: built once per xdist worker
        - Same seed on every worker, so every worker sees the same states
        - Tests must not modify the matrices in place
    """
    states = StateFactory.batch(RANDOM_STATE_COUNT, n_qubits=4, seed=RANDOM_STATE_SEED)
    logger.info(f"✓ Built {len(states)} random states")
    yield states


@pytest.fixture
def rng():
    """numpy Generator with a fixed seed."""
    return np.random.default_rng(12345)
