"""
Exception hierarchy for the simulator.

Every error raised on purpose derives from DephasimError so the CLI can
map it to exit code 1; argument-shaped errors also subclass ValueError.
"""


class DephasimError(Exception):
    """Base class for simulator errors."""


class DimensionError(DephasimError, ValueError):
    """Matrix dimensions are inconsistent, not a power of two, or too large."""


class InvalidStateError(DephasimError, ValueError):
    """Input is not a valid density matrix (Hermitian, unit trace, PSD)."""


class ParameterError(DephasimError, ValueError):
    """A physical or numerical parameter is out of range."""


class ConvergenceError(DephasimError, ArithmeticError):
    """An iterative routine did not converge within its sweep budget."""


class ScenarioError(DephasimError, KeyError):
    """Unknown scenario or table preset name."""

    def __str__(self) -> str:
        # KeyError quotes its argument; keep the message readable.
        return str(self.args[0]) if self.args else ""


class ToleranceError(DephasimError):
    """A validation check landed outside its configured tolerance."""


class OutputError(DephasimError, OSError):
    """Writing results failed."""

    def __init__(self, path, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class ConfigError(DephasimError):
    """Configuration file or environment override is invalid."""
