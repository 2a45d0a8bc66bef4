"""Exception hierarchy shared by all modules.

Two families matter to callers: parameter/domain problems (map to CLI exit
code 2) and numerical-quality problems (map to CLI exit code 3).  Everything
derives from QpshellError so library users can catch one base type.
"""

from __future__ import annotations


class QpshellError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(QpshellError, ValueError):
    """A parameter lies outside the mathematical domain of an operation."""


class ThresholdError(DomainError):
    """Kinematics degenerate at zero rapidity (q = 0, elastic threshold)."""


class PoleError(QpshellError, ArithmeticError):
    """A closed-form denominator vanished at the requested point."""


class SingularPointError(QpshellError, ArithmeticError):
    """A curve value is undefined at this abscissa (denominator zero)."""


class UnsupportedBranchError(QpshellError):
    """Operation only defined on the other energy branch (real vs bound)."""


class UnsupportedFormError(QpshellError):
    """No explicit closed form is provided for this variant/configuration."""


class EvaluationError(QpshellError):
    """An integrand or scanned function returned a non-finite value."""

    def __init__(self, message: str, x: float | None = None):
        super().__init__(message)
        self.x = x


class AccuracyError(QpshellError):
    """A numerical routine could not reach the requested tolerance.

    `best` carries the most accurate estimate obtained before giving up,
    when one is available.
    """

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best
