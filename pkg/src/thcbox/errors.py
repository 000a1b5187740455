"""Exception types shared across the package."""


class ThcboxError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(ThcboxError, ValueError):
    """A parameter value violates its stated domain."""


class CalibrationError(ThcboxError, RuntimeError):
    """Newton calibration did not converge.

    Carries the best residual (max absolute component) seen before giving up.
    """

    def __init__(self, message: str, best_residual: float):
        super().__init__(f"{message} (best residual {best_residual:.3e})")
        self.best_residual = best_residual


class IntegrationError(ThcboxError, RuntimeError):
    """Time integration failed (step underflow or step budget exhausted)."""


class InternalConsistencyError(ThcboxError, RuntimeError):
    """A closed-form result failed its own residual check; indicates a bug."""
