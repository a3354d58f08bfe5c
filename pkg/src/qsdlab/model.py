"""Power-law logistic birth-death model.

Two parametrizations are supported.  The working one uses
``(N, R0, alpha, mu, s)`` with rates

    lambda_n = mu * R0 * (1 - (n/N)**s) * n
    mu_n     = mu * (1 + alpha * (n/N)**s) * n,      n = 0..N,

and the classical one uses ``(a1, a2, b1, b2, s)`` with
``lambda_n = (a1 - b1 n**s) n`` and ``mu_n = (a2 + b2 n**s) n``.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass

import numpy as np

from .errors import IntegrityError, ParameterError, ValidityError


@dataclass(frozen=True)
class ModelParams:
    """Parameters of the (N, R0, alpha, mu, s) formulation."""

    N: int
    R0: float
    alpha: float = 0.0
    mu: float = 1.0
    s: float = 1.0

    def __post_init__(self):
        if isinstance(self.N, bool) or not isinstance(self.N, numbers.Integral):
            raise ParameterError(f"N must be an integer, got {self.N!r}")
        object.__setattr__(self, "N", int(self.N))
        for name in ("R0", "alpha", "mu", "s"):
            value = getattr(self, name)
            if not isinstance(value, numbers.Real) or not math.isfinite(value):
                raise ParameterError(f"{name} must be a finite real, got {value!r}")
        if self.N < 2:
            raise ParameterError(f"N must be >= 2, got {self.N}")
        if self.R0 <= 0:
            raise ParameterError(f"R0 must be positive, got {self.R0}")
        if self.alpha < 0:
            raise ParameterError(f"alpha must be nonnegative, got {self.alpha}")
        if self.mu <= 0:
            raise ParameterError(f"mu must be positive, got {self.mu}")
        if self.s <= 0:
            raise ParameterError(f"s must be positive, got {self.s}")

    def require_supercritical(self) -> None:
        """Raise :class:`ValidityError` unless R0 > 1."""
        require_supercritical(self.R0)


def require_supercritical(R0: float) -> None:
    if not R0 > 1:
        raise ValidityError(
            f"asymptotic approximations require R0 > 1, got R0={R0}"
        )


@dataclass(frozen=True)
class BartlettParams:
    """Rates of the classical formulation, with the usual sums and differences."""

    a1: float
    a2: float
    b1: float
    b2: float
    s: float

    @property
    def a(self) -> float:
        return self.a1 - self.a2

    @property
    def b(self) -> float:
        return self.b1 + self.b2

    @property
    def c(self) -> float:
        return self.a1 + self.a2

    @property
    def d(self) -> float:
        return self.b1 - self.b2


@dataclass(frozen=True)
class RateTable:
    """Birth and death rates indexed by state n = 0..N."""

    lam: np.ndarray
    death: np.ndarray

    def __post_init__(self):
        lam = np.array(self.lam, dtype=float)
        death = np.array(self.death, dtype=float)
        if lam.ndim != 1 or lam.shape != death.shape or lam.size < 2:
            raise ParameterError("rate arrays must be 1-D, equal length, N >= 1")
        if lam[0] != 0 or lam[-1] != 0 or death[0] != 0:
            raise ParameterError("need lambda_0 = lambda_N = mu_0 = 0")
        if np.any(lam < 0) or np.any(death[1:] <= 0):
            raise ParameterError("need lambda_n >= 0 and mu_n > 0 for n >= 1")
        lam.flags.writeable = False
        death.flags.writeable = False
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "death", death)

    @property
    def N(self) -> int:
        return self.lam.size - 1


def _relative_powers(N: int, s: float) -> np.ndarray:
    """(n/N)**s for n = 0..N, with the n = 0 entry exactly zero."""
    n = np.arange(N + 1, dtype=float)
    out = np.zeros(N + 1)
    out[1:] = np.exp(s * np.log(n[1:] / N))
    out[N] = 1.0
    return out


def rates(p: ModelParams) -> RateTable:
    n = np.arange(p.N + 1, dtype=float)
    f = _relative_powers(p.N, p.s)
    lam = p.mu * p.R0 * (1.0 - f) * n
    death = p.mu * (1.0 + p.alpha * f) * n
    return RateTable(lam, death)


def to_bartlett(p: ModelParams) -> BartlettParams:
    Ns = p.N ** p.s
    return BartlettParams(
        a1=p.mu * p.R0,
        a2=p.mu,
        b1=p.mu * p.R0 / Ns,
        b2=p.mu * p.alpha / Ns,
        s=p.s,
    )


def from_bartlett(q: BartlettParams, N: int) -> ModelParams:
    """Inverse of :func:`to_bartlett`.

    The classical rates only describe the finite model when the birth-rate
    cutoff ``(a1/b1)**(1/s)`` is the integer ``N``; anything else raises
    :class:`IntegrityError`.
    """
    if q.a1 <= 0 or q.a2 <= 0 or q.b1 <= 0 or q.s <= 0:
        raise ParameterError("a1, a2, b1 and s must be positive")
    if q.b2 < 0:
        raise ParameterError(f"b2 must be nonnegative, got {q.b2}")
    cutoff = (q.a1 / q.b1) ** (1.0 / q.s)
    if not math.isclose(cutoff, N, rel_tol=1e-9, abs_tol=0.0):
        raise IntegrityError(
            f"(a1/b1)**(1/s) = {cutoff!r} does not equal N = {N}"
        )
    Ns = float(N) ** q.s
    return ModelParams(
        N=N, R0=q.a1 / q.a2, alpha=q.b2 * Ns / q.a2, mu=q.a2, s=q.s
    )


def bartlett_rates(q: BartlettParams, N: int) -> RateTable:
    """Rates of the classical formulation on the truncated space 0..N."""
    n = np.arange(N + 1, dtype=float)
    ns = np.zeros(N + 1)
    ns[1:] = np.exp(q.s * np.log(n[1:]))
    cutoff = (q.a1 / q.b1) ** (1.0 / q.s)
    lam = np.where(n <= cutoff, (q.a1 - q.b1 * ns) * n, 0.0)
    # n = N sits on the cutoff; rounding may leave a tiny nonzero residue.
    lam[N] = 0.0
    lam = np.maximum(lam, 0.0)
    death = (q.a2 + q.b2 * ns) * n
    return RateTable(lam, death)
