"""Exception hierarchy shared across the package.

Public functions raise these instead of bare ValueError/RuntimeError so that
callers (and the CLI exit-code mapping) can tell apart bad inputs, numeric
failures, and I/O problems.
"""

from __future__ import annotations


class RenewalKitError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(RenewalKitError, ValueError):
    """Inputs violate a documented precondition (domain, shape, parameters)."""


class TickDataError(ValidationError):
    """A tick CSV row is malformed or out of order.

    Attributes:
        row: 1-based physical line number of the offending row, or None when
            the problem is file-level (e.g. empty file).
    """

    def __init__(self, message: str, row: int | None = None):
        super().__init__(message if row is None else f"row {row}: {message}")
        self.row = row


class QuadratureError(RenewalKitError, ArithmeticError):
    """Adaptive quadrature did not converge within the subdivision budget.

    Carries the best estimate obtained and its reported error bound.
    """

    def __init__(self, message: str, estimate: float, error_bound: float):
        super().__init__(
            f"{message} (best estimate {estimate!r}, error bound {error_bound!r})"
        )
        self.estimate = estimate
        self.error_bound = error_bound


class CrossCheckError(RenewalKitError, ArithmeticError):
    """Two independent computation routes disagree beyond tolerance.

    Both values are kept so the caller can see which route drifted.
    """

    def __init__(self, message: str, primary: float, check: float):
        super().__init__(f"{message}: primary={primary!r} vs check={check!r}")
        self.primary = primary
        self.check = check


class FitError(RenewalKitError, RuntimeError):
    """Maximum-likelihood fitting failed (non-convergence or unidentifiable)."""


class SamplingError(RenewalKitError, RuntimeError):
    """Monte Carlo sampling cannot proceed (e.g. vanishing acceptance rate)."""


class HeavyTailWarning(UserWarning):
    """Sample moments are inconsistent with a finite-variance waiting time."""
