"""Exception types shared across the package."""


class AestError(Exception):
    """Base class for all package errors."""


class ConfigError(AestError, ValueError):
    """Invalid configuration: bad sizes, profiles, parameters, or JSON configs."""


class DimensionMismatchError(ConfigError):
    """Operands have incompatible dimensions."""


class ContractViolationError(AestError):
    """A documented call precondition was violated (e.g. breakpoint inside a step)."""


class NumericError(AestError, RuntimeError):
    """A numerical procedure failed to converge or aborted on a sanity check."""


class CostGuardError(ConfigError):
    """A deliberately bounded operation was invoked beyond its size guard."""


class CalibrationError(NumericError):
    """Coupling calibration found no usable optimum; carries the sweep data."""

    def __init__(self, message: str, sweep=None):
        super().__init__(message)
        self.sweep = sweep
