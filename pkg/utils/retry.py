"""
Retry Helpers

tenacity-based retry for transient filesystem failures (a rename
blocked by a concurrent reader, a locked file on Windows).

Usage:
    from utils.retry import retry_io

    @retry_io()
    def replace(src, dst):
        os.replace(src, dst)
"""

import logging

from tenacity import before_sleep_log, retry, retry_if_exception_type, stop_after_attempt, wait_exponential

from utils.logger import get_logger

logger = get_logger(__name__)

TRANSIENT_IO_ERRORS = (PermissionError, BlockingIOError, InterruptedError)


def retry_io(max_attempts: int = 3, delay: float = 0.1, exceptions: tuple = TRANSIENT_IO_ERRORS):
    """
    Retry a filesystem operation on transient errors.

    The last exception propagates unchanged once attempts are exhausted.

    Args:
        max_attempts: Total attempts, first call included
        delay: Initial wait in seconds, doubled after each failure
        exceptions: Exception types worth retrying

    Example:
        @retry_io(max_attempts=5)
        def write(path, payload):
            path.write_bytes(payload)
    """
    return retry(
        retry=retry_if_exception_type(exceptions),
        stop=stop_after_attempt(max_attempts),
        wait=wait_exponential(multiplier=delay, max=2.0),
        before_sleep=before_sleep_log(logger, logging.WARNING),
        reraise=True,
    )
