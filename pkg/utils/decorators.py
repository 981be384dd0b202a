"""
Function Decorators

Logging and timing wrappers for long-running computations and CLI commands.

Usage:
    from utils.decorators import log_execution, measure_performance

    @measure_performance
    def run_scenario(scenario):
        ...
"""

import functools
import time
from typing import Any, Callable

from utils.logger import get_logger

logger = get_logger(__name__)

# Upper bounds (seconds) of the timing categories, checked in order.
PERFORMANCE_LEVELS = ((1.0, "FAST"), (5.0, "NORMAL"), (30.0, "SLOW"))


def performance_level(elapsed: float) -> str:
    """
    Timing category for an elapsed wall-clock time.

    Example:
        performance_level(0.2)    # "FAST"
        performance_level(120)    # "VERY_SLOW"
    """
    for bound, level in PERFORMANCE_LEVELS:
        if elapsed < bound:
            return level
    return "VERY_SLOW"


def log_execution(func: Callable) -> Callable:
    """
    Log a banner around a call, with its duration and outcome.

    Exceptions are logged and re-raised unchanged.

    Example:
        @log_execution
        def cmd_table(args):
            pass
    """
    @functools.wraps(func)
    def wrapper(*args, **kwargs) -> Any:
        logger.info(f"{'=' * 60}")
        logger.info(f"EXECUTING: {func.__name__}")
        logger.info(f"{'=' * 60}")

        start_time = time.perf_counter()
        try:
            result = func(*args, **kwargs)
        except Exception as e:
            elapsed = time.perf_counter() - start_time
            logger.error(f"✗ FAILED: {func.__name__} ({elapsed:.2f}s)")
            logger.error(f"{type(e).__name__}: {e}")
            logger.error(f"{'=' * 60}")
            raise

        elapsed = time.perf_counter() - start_time
        logger.info(f"✓ COMPLETED: {func.__name__} ({elapsed:.2f}s)")
        logger.info(f"{'=' * 60}")
        return result

    return wrapper


def measure_performance(func: Callable) -> Callable:
    """
    Log the duration of a call at debug level, tagged with its category.

    Example:
        @measure_performance
        def mc_evolve(...):
            pass
    """
    @functools.wraps(func)
    def wrapper(*args, **kwargs) -> Any:
        start_time = time.perf_counter()
        result = func(*args, **kwargs)
        elapsed = time.perf_counter() - start_time
        logger.debug(f"[{performance_level(elapsed)}] {func.__name__}: {elapsed:.3f}s")
        return result

    return wrapper
