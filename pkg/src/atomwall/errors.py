"""Exception types shared across the package."""


class AtomWallError(Exception):
    """Base class for all errors raised by atomwall."""


class DomainError(AtomWallError, ValueError):
    """An argument is outside the mathematical domain of an operation."""


class ValidityError(AtomWallError, ValueError):
    """A physical model is invalid (e.g. permittivity below 1)."""


class SingularPointError(DomainError):
    """Evaluation requested exactly at a singular point; a documented
    limit value exists and the caller must use it explicitly."""


class PoleError(DomainError):
    """Evaluation requested on a pole (resonance) of a response function."""


class UnsupportedOrderError(DomainError):
    """A derivative or series order outside the implemented range."""


class QuadratureError(AtomWallError):
    """Base class for numerical-integration failures."""


class BudgetExceededError(QuadratureError):
    """Adaptive integration did not converge within its evaluation budget.

    Carries the best estimate so far in the ``result`` attribute.
    """

    def __init__(self, message, result):
        super().__init__(message)
        self.result = result


class RegularizationFailureError(QuadratureError):
    """The delta -> 0 extrapolation of a regularized integral did not
    settle; usually the singularity order of the integrand was
    misdeclared."""


class NonAlternatingTailError(QuadratureError):
    """The tail of a semi-infinite integrand neither decays nor produces
    alternating lobes, so series acceleration is inapplicable."""


class ConfigError(AtomWallError, ValueError):
    """A run configuration is malformed or inconsistent."""
