"""Asymptotic approximations of the first three QSD cumulants.

For R0 > 1 and large N,

    kappa_1 ~ x1 N + x2 + x3 / N
    kappa_2 ~ y1 N + y2
    kappa_3 ~ z1 N

with coefficients depending on (R0, alpha, s) through five rational
functions h1..h5 of s.  ``per_s_coefficients`` holds the separately
derived closed forms for s = 1..4 and exists to cross-check the general ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .cumulants import CumulantSet, OdeRhs, integer_s, ode_rhs
from .errors import DomainError, ParameterError, UnsupportedS
from .model import ModelParams, require_supercritical


class HValues(NamedTuple):
    h1: float
    h2: float
    h3: float
    h4: float
    h5: float


@dataclass(frozen=True)
class CoeffSet:
    x1: float
    x2: float
    x3: float
    y1: float
    y2: float
    z1: float

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in ("x1", "x2", "x3", "y1", "y2", "z1")}


@dataclass(frozen=True)
class ApproxCumulants:
    """Approximate kappa_1..kappa_3 with their breakdown into powers of N.

    ``terms`` maps ``"kappa1"`` etc. to the tuple of summands, leading first.
    """

    kappa1: float
    kappa2: float
    kappa3: float
    method: str = "PREFERRED"
    terms: dict = field(default_factory=dict, compare=False)

    def __getitem__(self, order: int) -> float:
        try:
            return (self.kappa1, self.kappa2, self.kappa3)[order - 1]
        except IndexError:
            raise IndexError(f"approximations cover kappa_1..kappa_3, not {order}") from None


def h_values(s) -> HValues:
    """h1..h5 at ``s``; exact when ``s`` is an int or Fraction."""
    if not s > 0:
        raise ParameterError(f"s must be positive, got {s}")
    if isinstance(s, int):
        s = Fraction(s)
    return HValues(
        1 / s,
        (s + 1) / (2 * s),
        (s**2 + 6 * s + 5) / (12 * s),
        (s**2 + 12 * s + 11) / (24 * s**2),
        1 / s**2,
    )


def _check_args(R0: float, alpha: float) -> None:
    require_supercritical(R0)
    if alpha < 0:
        raise ParameterError(f"alpha must be nonnegative, got {alpha}")


def coefficients(R0: float, alpha: float, s: float) -> CoeffSet:
    _check_args(R0, alpha)
    h1, h2, h3, h4, h5 = (float(h) for h in h_values(s))
    K = (alpha + 1) * R0
    ratio = (R0 - 1) / (R0 + alpha)
    pre = K / ((R0 + alpha) ** 2 * (R0 - 1) ** 2)
    x1 = ratio**h1
    return CoeffSet(
        x1=x1,
        x2=-h2 * K / ((R0 + alpha) * (R0 - 1)),
        x3=-pre * (1 / ratio) ** h1 * (h3 * (R0**2 + alpha) + h4 * K),
        y1=h1 * K / ((R0 + alpha) * (R0 - 1)) * x1,
        y2=h2 * pre * (R0**2 + alpha),
        z1=-pre * x1 * (h1 * (R0**2 + alpha) - h5 * K),
    )


def per_s_coefficients(R0: float, alpha: float, s: int) -> CoeffSet:
    """Closed forms derived separately for s = 1, 2, 3, 4."""
    _check_args(R0, alpha)
    s = integer_s(s)
    K = (alpha + 1) * R0
    A = R0**2 + alpha
    Rp, Rm = R0 + alpha, R0 - 1
    pre = K / (Rp**2 * Rm**2)
    if s == 1:
        return CoeffSet(
            x1=Rm / Rp,
            x2=-K / (Rp * Rm),
            x3=-K / Rm**3 * (R0 + 1),
            y1=K / Rp**2,
            y2=pre * A,
            z1=-K / Rp**3 * (R0 - alpha),
        )
    if s == 2:
        root = (Rm / Rp) ** 0.5
        return CoeffSet(
            x1=root,
            x2=-0.75 * K / (Rp * Rm),
            x3=-pre * (Rp / Rm) ** 0.5 * (7 / 8 * A + 13 / 32 * K),
            y1=0.5 * K / (Rp * Rm) * root,
            y2=0.75 * pre * A,
            z1=-pre * root * (0.5 * A - 0.25 * K),
        )
    if s == 3:
        root = (Rm / Rp) ** (1 / 3)
        return CoeffSet(
            x1=root,
            x2=-2 / 3 * K / (Rp * Rm),
            x3=-pre * (Rp / Rm) ** (1 / 3) * (8 / 9 * A + 7 / 27 * K),
            y1=1 / 3 * K / (Rp * Rm) * root,
            y2=2 / 3 * pre * A,
            z1=-pre * root * (1 / 3 * A - 1 / 9 * K),
        )
    root = (Rm / Rp) ** 0.25
    return CoeffSet(
        x1=root,
        x2=-5 / 8 * K / (Rp * Rm),
        x3=-pre * (Rp / Rm) ** 0.25 * (15 / 16 * A + 25 / 128 * K),
        y1=0.25 * K / (Rp * Rm) * root,
        y2=5 / 8 * pre * A,
        z1=-pre * root * (0.25 * A - 1 / 16 * K),
    )


def compose(c: CoeffSet, N: int, method: str = "PREFERRED") -> ApproxCumulants:
    """Three-term kappa_1, two-term kappa_2, one-term kappa_3."""
    t1 = (c.x1 * N, c.x2, c.x3 / N)
    t2 = (c.y1 * N, c.y2)
    t3 = (c.z1 * N,)
    return ApproxCumulants(
        kappa1=math.fsum(t1),
        kappa2=math.fsum(t2),
        kappa3=t3[0],
        method=method,
        terms={"kappa1": t1, "kappa2": t2, "kappa3": t3},
    )


def approx_cumulants(p: ModelParams) -> ApproxCumulants:
    p.require_supercritical()
    return compose(coefficients(p.R0, p.alpha, p.s), p.N)


def s_thresholds(R0: float, alpha: float) -> tuple[float, float]:
    """(s2, s3): the variance peaks in s at s2; kappa_3 changes sign at s3."""
    require_supercritical(R0)
    s2 = math.log((R0 + alpha) / (R0 - 1))
    s3 = (alpha + 1) * R0 / (R0**2 + alpha)
    return s2, s3


def aux_gamma(R0: float, alpha: float) -> float:
    """Exponential decay rate per unit N of p^(0)_1 (alpha > 0)."""
    if alpha <= 0:
        raise DomainError("decay rate formula needs alpha > 0")
    return math.log(R0) - (alpha + 1) / alpha * math.log((alpha + 1) * R0 / (R0 + alpha))


def p1_aux_asymptotic(p: ModelParams) -> float:
    """Large-N approximation of p^(0)_1 for s = 1, alpha > 0, R0 > 1."""
    return math.exp(log_p1_aux_asymptotic(p))


def log_p1_aux_asymptotic(p: ModelParams) -> float:
    """Natural log of :func:`p1_aux_asymptotic` (no underflow for large N)."""
    if p.s != 1:
        raise UnsupportedS(f"tail asymptotic is only available for s = 1, got s={p.s}")
    if p.alpha <= 0:
        raise DomainError("tail asymptotic needs alpha > 0")
    p.require_supercritical()
    beta_sq = 2 * p.N * aux_gamma(p.R0, p.alpha)
    log_prefactor = math.log(
        p.R0 * (p.R0 - 1) * math.sqrt((1 + p.alpha) * p.N) / (p.R0 + p.alpha)
    )
    # standard normal density at beta: exp(-beta^2/2) / sqrt(2 pi)
    return log_prefactor - beta_sq / 2 - 0.5 * math.log(2 * math.pi)


def critical_point_residual(p: ModelParams) -> OdeRhs:
    """ODE right-hand sides evaluated at the truncated asymptotic cumulants.

    kappa_4..kappa_{s+3} are set to zero; they only enter at orders the
    truncation already neglects.
    """
    s = integer_s(p.s)
    approx = approx_cumulants(p)
    zeros = (0.0,) * s
    k = CumulantSet.of(approx.kappa1, approx.kappa2, approx.kappa3, *zeros)
    return ode_rhs(p, k)
