"""Exception hierarchy shared by every evaluator in the package."""


class QDivisorError(Exception):
    """Base class for all package errors."""


class SchemaError(QDivisorError, ValueError):
    """Parameters are missing, malformed, or outside an identity's shape."""


class PoleError(QDivisorError, ZeroDivisionError):
    """A denominator vanishes at the requested parameters."""


class DomainError(QDivisorError, ValueError):
    """A numeric routine was called outside its convergence domain (e.g. |q| >= 1)."""


class ConvergenceError(QDivisorError, ArithmeticError):
    """A truncated series could not certify its tail within the configured limits."""
