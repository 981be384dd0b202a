"""
Logging Configuration

Provides structured logging throughout the simulator.
Logs to stderr (colored) and optionally to a file, at the level
configured per environment. Stdout is reserved for CSV output.

Usage:
    from utils.logger import get_logger

    logger = get_logger(__name__)
    logger.info("Scenario started")
    logger.warning("Eigenvalue clamped")
"""

import logging
from pathlib import Path

import colorlog

from config.settings import config


LOGS_DIR = Path(__file__).parent.parent / "logs"

# Log filename based on environment
LOG_FILE = LOGS_DIR / f"{config.env}.log"

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

LOG_COLORS = {
    "DEBUG": "cyan",
    "INFO": "green",
    "WARNING": "yellow",
    "ERROR": "red",
    "CRITICAL": "bold_red",
}


def get_logger(name: str) -> logging.Logger:
    """
    Get configured logger instance.

    Args:
        name: Logger name (typically __name__)

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(name)

    # Only configure if not already configured
    if not logger.handlers:
        log_level = getattr(logging, config.logging.get("level", "INFO"))
        logger.setLevel(log_level)

        console_handler = colorlog.StreamHandler()
        console_handler.setLevel(log_level)
        console_handler.setFormatter(
            colorlog.ColoredFormatter(
                fmt="%(log_color)s" + LOG_FORMAT,
                datefmt=DATE_FORMAT,
                log_colors=LOG_COLORS,
            )
        )
        logger.addHandler(console_handler)

        if config.logging.get("to_file", False):
            LOGS_DIR.mkdir(exist_ok=True)
            file_handler = logging.FileHandler(LOG_FILE, encoding="utf-8")
            file_handler.setLevel(log_level)
            file_handler.setFormatter(logging.Formatter(fmt=LOG_FORMAT, datefmt=DATE_FORMAT))
            logger.addHandler(file_handler)

    return logger
