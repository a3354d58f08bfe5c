"""Exception hierarchy.

Everything raised on purpose by the package derives from :class:`QsdLabError`.
Input problems are :class:`ParameterError` (a ``ValueError``); iteration
failures are :class:`NoConvergence`.  The CLI maps the two families to
distinct exit codes.
"""

from __future__ import annotations


class QsdLabError(Exception):
    """Base class for package errors."""


class ParameterError(QsdLabError, ValueError):
    """Invalid or unusable model parameters."""


class IntegrityError(ParameterError):
    """First-formulation rates inconsistent with the requested maximum size N."""


class DegenerateRates(ParameterError):
    """A birth rate vanishes strictly inside the state space."""


class UnsupportedS(ParameterError):
    """No published formula exists for this power-law exponent."""


class ValidityError(ParameterError):
    """Asymptotic approximation requested outside R0 > 1."""


class DomainError(ParameterError):
    """Formula undefined at these parameters (e.g. alpha = 0 where alpha divides)."""


class CumulantUnavailable(ParameterError):
    """A cumulant above the computed order was requested."""


class NoConvergence(QsdLabError, ArithmeticError):
    """Iteration stopped at ``max_iter`` without reaching the tolerance."""

    def __init__(self, max_iter: int, residual: float):
        self.max_iter = max_iter
        self.residual = residual
        super().__init__(
            f"no convergence after {max_iter} iterations (residual {residual:.3e})"
        )
