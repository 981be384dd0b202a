"""
Pytest Configuration and Hooks

This file is automatically discovered by pytest.

Imports fixtures from:
- fixtures.state_fixtures: ghz, maximally_mixed, random_states, rng
- fixtures.channel_fixtures: preset_partition, all_partitions, unit_noise, output_dir

Defines hooks:
- pytest_configure: create the reports/ and logs/ directories
- pytest_sessionstart: log the active environment and numeric policy
- pytest_sessionfinish: log the overall result
"""

import os

# Must be set before config.settings is imported.
os.environ.setdefault("ENV", "dev")

from pathlib import Path

import pytest
from hypothesis import settings as hypothesis_settings

from config.settings import config as sim_config
from utils.logger import get_logger

# Import all fixtures from fixtures modules
# This makes them available to all tests
from fixtures.state_fixtures import ghz, maximally_mixed, random_states, rng
from fixtures.channel_fixtures import preset_partition, all_partitions, unit_noise, output_dir

logger = get_logger(__name__)

# Hypothesis: no per-example deadline (first calls pay numpy warm-up), bounded example count.
hypothesis_settings.register_profile("dephasim", deadline=None, max_examples=50)
hypothesis_settings.load_profile("dephasim")


# ==================== PYTEST HOOKS ====================

def pytest_configure(config):
    """
    Pytest configuration hook (runs before tests).

    Args:
        config: Pytest config
    """
    root = Path(__file__).parent
    (root / "reports").mkdir(exist_ok=True)
    (root / "logs").mkdir(exist_ok=True)
    logger.debug("Directories created/verified")


def pytest_sessionstart(session):
    """
    Pytest hook that runs at session start.

    Args:
        session: Pytest session
    """
    logger.info("=" * 60)
    logger.info("TEST SESSION STARTED")
    logger.info(f"Environment: {sim_config.env}")
    logger.info(f"Eigensolver: {sim_config.numerics['eigensolver']}, threads: {sim_config.threads}")
    logger.info("=" * 60)


def pytest_sessionfinish(session, exitstatus):
    """
    Pytest hook that runs at session end.

    Args:
        session: Pytest session
        exitstatus: Test exit status
    """
    logger.info("=" * 60)
    status = "PASSED" if exitstatus == 0 else "FAILED"
    logger.info(f"TEST SESSION FINISHED - {status}")
    logger.info("=" * 60)
