"""Cumulants of discrete distributions and the cumulant ODE right-hand sides.

``ode_rhs`` returns the time derivatives (A, B, C) of the first three
cumulants of the *unconditioned* process, as polynomials in kappa_1..kappa_{s+3}.
The polynomials are written out per s; they are plain arithmetic so any
numeric type (float, Fraction, mpmath.mpf) flows through unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import CumulantUnavailable, ParameterError, UnsupportedS
from .model import ModelParams, to_bartlett
from .qsd import ProbVector

MAX_ORDER = 7


@dataclass(frozen=True)
class CumulantSet:
    """kappa_1..kappa_max_order; higher orders raise rather than read as zero."""

    values: tuple
    max_order: int

    def __post_init__(self):
        values = tuple(self.values)
        if not 1 <= self.max_order <= MAX_ORDER:
            raise ParameterError(f"max_order must be in 1..{MAX_ORDER}")
        if len(values) != self.max_order:
            raise ParameterError(
                f"expected {self.max_order} cumulants, got {len(values)}"
            )
        object.__setattr__(self, "values", values)

    @classmethod
    def of(cls, *kappas) -> "CumulantSet":
        return cls(tuple(kappas), len(kappas))

    def __getitem__(self, order: int):
        if not 1 <= order <= MAX_ORDER:
            raise IndexError(f"cumulant order {order} outside 1..{MAX_ORDER}")
        if order > self.max_order:
            raise CumulantUnavailable(
                f"kappa_{order} requested but only {self.max_order} computed"
            )
        return self.values[order - 1]

    @property
    def kappa(self) -> np.ndarray:
        """Length-7 float array, NaN above ``max_order``."""
        out = np.full(MAX_ORDER, np.nan)
        out[: self.max_order] = [float(v) for v in self.values]
        return out


class OdeRhs(NamedTuple):
    A: float
    B: float
    C: float


def central_moments(n: Sequence[float], q: Sequence[float], max_order: int):
    """Mean and central moments mu'_2..mu'_max_order with compensated sums."""
    n = np.asarray(n, dtype=float)
    q = np.asarray(q, dtype=float)
    mean = math.fsum(n * q)
    # one refinement step removes the rounding left in the first pass
    mean += math.fsum((n - mean) * q)
    dev = n - mean
    moments = [mean, 0.0]
    power = dev.copy()
    for _ in range(2, max_order + 1):
        power = power * dev
        moments.append(math.fsum(power * q))
    return moments


def cumulants_from_central(m) -> list:
    """Cumulants from [mean, 0, mu'_2, ..., mu'_k] (k <= 7)."""
    k = len(m) - 1
    out = [m[0]]
    if k >= 2:
        out.append(m[2])
    if k >= 3:
        out.append(m[3])
    if k >= 4:
        out.append(m[4] - 3 * m[2] ** 2)
    if k >= 5:
        out.append(m[5] - 10 * m[3] * m[2])
    if k >= 6:
        out.append(m[6] - 15 * m[4] * m[2] - 10 * m[3] ** 2 + 30 * m[2] ** 3)
    if k >= 7:
        out.append(
            m[7] - 21 * m[5] * m[2] - 35 * m[4] * m[3] + 210 * m[3] * m[2] ** 2
        )
    return out


def cumulants_of(dist: ProbVector, max_order: int = MAX_ORDER) -> CumulantSet:
    if not 1 <= max_order <= MAX_ORDER:
        raise ParameterError(f"max_order must be in 1..{MAX_ORDER}, got {max_order}")
    m = central_moments(dist.states, dist.p, max(max_order, 1))
    return CumulantSet(tuple(cumulants_from_central(m)[:max_order]), max_order)


# ---------------------------------------------------------------------------
# right-hand sides


def _rhs_s1(p: ModelParams, k: CumulantSet) -> OdeRhs:
    q = to_bartlett(p)
    a, b, c, d = q.a, q.b, q.c, q.d
    k1, k2, k3, k4 = k[1], k[2], k[3], k[4]
    A = a * k1 - b * (k1**2 + k2)
    B = 2 * a * k2 - b * (4 * k1 * k2 + 2 * k3) + c * k1 - d * (k1**2 + k2)
    C = (
        a * (k1 + 3 * k3)
        - b * (k1**2 + 6 * k1 * k3 + 6 * k2**2 + k2 + 3 * k4)
        + 3 * c * k2
        - d * (6 * k1 * k2 + 3 * k3)
    )
    return OdeRhs(A, B, C)


def _rhs_s2(p: ModelParams, k: CumulantSet) -> OdeRhs:
    mu, R0, al, N2 = p.mu, p.R0, p.alpha, p.N**2
    k1, k2, k3, k4, k5 = (k[i] for i in range(1, 6))
    plus = mu * (R0 + al) / N2
    minus = mu * (R0 - al) / N2
    m3 = k1**3 + 3 * k1 * k2 + k3
    d3 = 3 * k1**2 * k2 + 3 * k1 * k3 + 3 * k2**2 + k4
    A = mu * (R0 - 1) * k1 - plus * m3
    B = 2 * mu * (R0 - 1) * k2 + mu * (R0 + 1) * k1 - minus * m3 - 2 * plus * d3
    C = (
        mu * (R0 - 1) * (k1 + 3 * k3)
        + 3 * mu * (R0 + 1) * k2
        - 3 * minus * d3
        - plus
        * (
            k1**3
            + 9 * k1**2 * k3
            + 18 * k1 * k2**2
            + 3 * k1 * k2
            + 9 * k1 * k4
            + 27 * k2 * k3
            + k3
            + 3 * k5
        )
    )
    return OdeRhs(A, B, C)


def _rhs_s3(p: ModelParams, k: CumulantSet) -> OdeRhs:
    mu, R0, al, N3 = p.mu, p.R0, p.alpha, p.N**3
    k1, k2, k3, k4, k5, k6 = (k[i] for i in range(1, 7))
    plus = mu * (R0 + al) / N3
    minus = mu * (R0 - al) / N3
    m4 = k1**4 + 6 * k1**2 * k2 + 4 * k1 * k3 + 3 * k2**2 + k4
    d4 = (
        4 * k1**3 * k2
        + 6 * k1**2 * k3
        + 12 * k1 * k2**2
        + 4 * k1 * k4
        + 10 * k2 * k3
        + k5
    )
    A = mu * (R0 - 1) * k1 - plus * m4
    B = 2 * mu * (R0 - 1) * k2 + mu * (R0 + 1) * k1 - minus * m4 - 2 * plus * d4
    C = (
        mu * (R0 - 1) * (k1 + 3 * k3)
        + 3 * mu * (R0 + 1) * k2
        - 3 * minus * d4
        - plus
        * (
            k1**4
            + 12 * k1**3 * k3
            + 36 * k1**2 * k2**2
            + 6 * k1**2 * k2
            + 18 * k1**2 * k4
            + 108 * k1 * k2 * k3
            + 4 * k1 * k3
            + 12 * k1 * k5
            + 36 * k2**3
            + 3 * k2**2
            + 42 * k2 * k4
            + 30 * k3**2
            + k4
            + 3 * k6
        )
    )
    return OdeRhs(A, B, C)


def _rhs_s4(p: ModelParams, k: CumulantSet) -> OdeRhs:
    mu, R0, al, N4 = p.mu, p.R0, p.alpha, p.N**4
    k1, k2, k3, k4, k5, k6, k7 = (k[i] for i in range(1, 8))
    plus = mu * (R0 + al) / N4
    minus = mu * (R0 - al) / N4
    m5 = (
        k1**5
        + 10 * k1**3 * k2
        + 10 * k1**2 * k3
        + 15 * k1 * k2**2
        + 5 * k1 * k4
        + 10 * k2 * k3
        + k5
    )
    d5 = (
        5 * k1**4 * k2
        + 10 * k1**3 * k3
        + 30 * k1**2 * k2**2
        + 10 * k1**2 * k4
        + 50 * k1 * k2 * k3
        + 5 * k1 * k5
        + 15 * k2**3
        + 15 * k2 * k4
        + 10 * k3**2
        + k6
    )
    A = mu * (R0 - 1) * k1 - plus * m5
    B = 2 * mu * (R0 - 1) * k2 + mu * (R0 + 1) * k1 - minus * m5 - 2 * plus * d5
    C = (
        mu * (R0 - 1) * (k1 + 3 * k3)
        + 3 * mu * (R0 + 1) * k2
        - 3 * minus * d5
        - plus
        * (
            k1**5
            + 15 * k1**4 * k3
            + 60 * k1**3 * k2**2
            + 10 * k1**3 * k2
            + 30 * k1**3 * k4
            + 270 * k1**2 * k2 * k3
            + 10 * k1**2 * k3
            + 30 * k1**2 * k5
            + 180 * k1 * k2**3
            + 15 * k1 * k2**2
            + 210 * k1 * k2 * k4
            + 150 * k1 * k3**2
            + 5 * k1 * k4
            + 15 * k1 * k6
            + 285 * k2**2 * k3
            + 10 * k2 * k3
            + 60 * k2 * k5
            + 105 * k3 * k4
            + k5
            + 3 * k7
        )
    )
    return OdeRhs(A, B, C)


_RHS = {1: _rhs_s1, 2: _rhs_s2, 3: _rhs_s3, 4: _rhs_s4}


def integer_s(s) -> int:
    """``s`` as an int if it is exactly one of 1..4, else :class:`UnsupportedS`."""
    if s in (1, 2, 3, 4):
        return int(s)
    raise UnsupportedS(f"cumulant ODE right-hand sides exist only for s in 1..4, got s={s}")


def ode_rhs(p: ModelParams, k: CumulantSet) -> OdeRhs:
    """Time derivatives of kappa_1, kappa_2, kappa_3 under the unconditioned dynamics."""
    s = integer_s(p.s)
    if k.max_order < s + 3:
        raise CumulantUnavailable(
            f"s={s} needs cumulants up to order {s + 3}, have {k.max_order}"
        )
    return _RHS[s](p, k)
