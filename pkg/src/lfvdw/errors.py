"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "LfvdwError",
    "UnsupportedOrderError",
    "PoleError",
    "SingularityError",
    "DomainError",
    "ConvergenceError",
    "GeometryError",
    "InvariantError",
    "ConfigError",
]


class LfvdwError(Exception):
    """Base class for all errors raised by this package."""


class UnsupportedOrderError(LfvdwError, ValueError):
    """Multipole order outside the implemented range."""


class PoleError(LfvdwError, ZeroDivisionError):
    """Evaluation requested at a pole of the function (e.g. Hankel at 0)."""


class SingularityError(LfvdwError, ValueError):
    """Green tensor requested at coincident points."""


class DomainError(LfvdwError, ValueError):
    """Argument outside the physical domain (e.g. negative imaginary frequency)."""


class ConvergenceError(LfvdwError, RuntimeError):
    """Adaptive quadrature exhausted its subdivision budget.

    Carries the partial result so callers can inspect how far the
    integration got.
    """

    def __init__(self, message: str, value: float, err_est: float, evals: int):
        super().__init__(message)
        self.value = value
        self.err_est = err_est
        self.evals = evals


class GeometryError(LfvdwError, ValueError):
    """Invalid geometric configuration (separations, shell radii)."""


class InvariantError(LfvdwError, AssertionError):
    """A physics invariant checked at run time was violated."""


class ConfigError(LfvdwError, ValueError):
    """Malformed or inconsistent run configuration."""
