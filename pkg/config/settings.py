"""
Configuration Manager

Loads environment-specific simulation settings from YAML files.
Provides centralized access to numeric policy (tolerances, grids,
Monte Carlo defaults) throughout the simulator.

Usage:
    from config.settings import config

    config.numerics              # Eigensolver, tolerances, clamp floor
    config.grids                 # Default time-grid resolutions
    config.saturation            # Saturation band defaults
    config.montecarlo            # Sample count, seed, scheme
    config.validate              # Oracle tolerances for `validate`
    config.threads               # Worker cap (DEPHASIM_THREADS wins)
    config.logging               # Logging settings
"""

import os
from pathlib import Path

import yaml
from dotenv import load_dotenv

from dephasim.errors import ConfigError


load_dotenv()

THREADS_ENV_VAR = "DEPHASIM_THREADS"


class Config:
    """Configuration loader that reads YAML files based on environment."""

    def __init__(self, env: str = None):
        """
        Initialize configuration from YAML file.

        Args:
            env: Environment name (dev, qa, prod). If None, reads from ENV variable.
                 Defaults to 'dev' if neither is provided.

        Raises:
            FileNotFoundError: If config file for environment doesn't exist.
        """
        self.env = env or os.getenv("ENV", "dev")
        self.config_file = Path(__file__).parent / "env" / f"{self.env}.yaml"

        if not self.config_file.exists():
            available = ", ".join(sorted(p.stem for p in self.config_file.parent.glob("*.yaml")))
            raise FileNotFoundError(
                f"Config file not found: {self.config_file}\n"
                f"   Available environments: {available}"
            )

        with open(self.config_file, "r", encoding="utf-8") as f:
            self.config = yaml.safe_load(f)

    @property
    def numerics(self) -> dict:
        """Get numeric policy (eigensolver, tolerances, clamp floor)."""
        return self.config["numerics"]

    @property
    def grids(self) -> dict:
        """Get default time-grid step counts (short_steps, long_steps, long_threshold)."""
        return self.config["grids"]

    @property
    def saturation(self) -> dict:
        """Get saturation detection defaults (rel_threshold)."""
        return self.config["saturation"]

    @property
    def montecarlo(self) -> dict:
        """Get Monte Carlo defaults (samples, seed, scheme, dt, block_elements)."""
        return self.config["montecarlo"]

    @property
    def validate(self) -> dict:
        """Get oracle tolerances used by the `validate` command."""
        return self.config["validate"]

    @property
    def logging(self) -> dict:
        """Get logging configuration (level, to_file)."""
        return self.config["logging"]

    @property
    def threads(self) -> int:
        """
        Resolve the worker cap.

        DEPHASIM_THREADS overrides workers.threads from the YAML file.

        Raises:
            ConfigError: If the override is not a positive integer.
        """
        raw = os.getenv(THREADS_ENV_VAR)
        if raw is None:
            return int(self.config.get("workers", {}).get("threads", 1))

        try:
            threads = int(raw)
        except ValueError as exc:
            raise ConfigError(f"{THREADS_ENV_VAR} must be a positive integer, got {raw!r}") from exc

        if threads < 1:
            raise ConfigError(f"{THREADS_ENV_VAR} must be a positive integer, got {raw!r}")
        return threads

    def get(self, key: str, default=None):
        """
        Get any configuration value by key.

        Args:
            key: Configuration key to retrieve.
            default: Default value if key doesn't exist.

        Returns:
            Configuration value or default.
        """
        return self.config.get(key, default)

    def __repr__(self) -> str:
        """String representation of config object."""
        return f"Config(env='{self.env}', eigensolver='{self.numerics['eigensolver']}')"


# Loaded once at import; every module reads the same instance.
config = Config()
