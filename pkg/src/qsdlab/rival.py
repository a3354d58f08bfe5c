"""Published rival approximations of the first three QSD cumulants (s = 1).

* BGL  - Bartlett, Gower and Leslie: mean, variance and third central moment
         in the classical rates.
* BR1  - first Bartlett-Renshaw variant; differs from the preferred method in
         x3, y2 and z1.
* BR2  - second Bartlett-Renshaw variant; its asymptotic coefficients coincide
         with the preferred ones.
* BB   - Bhowmick et al. at beta = delta = 1, alpha_1 = 1, alpha_2 = alpha.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .asymptotics import ApproxCumulants, CoeffSet, approx_cumulants, coefficients, compose
from .errors import ParameterError, UnsupportedS
from .model import ModelParams, require_supercritical, to_bartlett


class MethodTag(str, enum.Enum):
    PREFERRED = "PREFERRED"
    BGL = "BGL"
    BR1 = "BR1"
    BR2 = "BR2"
    BB = "BB"


S1_ONLY = frozenset({MethodTag.BGL, MethodTag.BR1, MethodTag.BR2, MethodTag.BB})

_FIELDS = ("x1", "x2", "x3", "y1", "y2", "z1")


@dataclass(frozen=True)
class RivalCoeffSet:
    """Asymptotic coefficients of a rival method; ``None`` marks a term it does not define."""

    method: MethodTag
    x1: Optional[float] = None
    x2: Optional[float] = None
    x3: Optional[float] = None
    y1: Optional[float] = None
    y2: Optional[float] = None
    z1: Optional[float] = None

    @property
    def available(self) -> dict:
        return {f: getattr(self, f) is not None for f in _FIELDS}

    @classmethod
    def from_coeffs(cls, method: MethodTag, c: CoeffSet) -> "RivalCoeffSet":
        return cls(method, **c.as_dict())


def _require_s1(p: ModelParams, method: MethodTag) -> None:
    if p.s != 1:
        raise UnsupportedS(f"{method.value} is only defined for s = 1, got s={p.s}")


def bgl_cumulants(p: ModelParams) -> ApproxCumulants:
    """Mean, variance and third central moment in the classical rates."""
    _require_s1(p, MethodTag.BGL)
    q = to_bartlett(p)
    if q.b == 0:
        raise ParameterError("b1 + b2 must be nonzero")
    k1 = (q.a1 - q.a2) / q.b
    k2 = (q.a1 - q.b1 * k1) / q.b
    k3 = (q.b2 - q.b1) / q.b * k2
    return ApproxCumulants(
        k1, k2, k3, method=MethodTag.BGL.value,
        terms={"kappa1": (k1,), "kappa2": (k2,), "kappa3": (k3,)},
    )


def bgl_coefficients(R0: float, alpha: float) -> RivalCoeffSet:
    """BGL cumulants reparametrized: exactly x1 N, y1 N and z1 N.

    The classical mean (a1 - a2)/(b1 + b2) carries no N^0 term, so x2 is
    reported as 0; x3 and y2 are not defined by the method.
    """
    require_supercritical(R0)
    c = coefficients(R0, alpha, 1)
    return RivalCoeffSet(MethodTag.BGL, x1=c.x1, x2=0.0, y1=c.y1, z1=c.z1)


def br1_coefficients(R0: float, alpha: float) -> RivalCoeffSet:
    require_supercritical(R0)
    K = (alpha + 1) * R0
    A = R0**2 + alpha
    Rp, Rm = R0 + alpha, R0 - 1
    return RivalCoeffSet(
        MethodTag.BR1,
        x1=Rm / Rp,
        x2=-K / (Rp * Rm),
        x3=K * (A - 5 * K) / (Rp * Rm**3),
        y1=K / Rp**2,
        y2=-K * (A - 4 * K) / (Rp**2 * Rm**2),
        z1=K * (A - 3 * K) / (Rp**3 * Rm),
    )


def br2_coefficients(R0: float, alpha: float) -> RivalCoeffSet:
    """Same coefficients as the preferred method at s = 1."""
    return RivalCoeffSet.from_coeffs(MethodTag.BR2, coefficients(R0, alpha, 1))


def bb_H(R0: float, alpha: float) -> float:
    return (alpha + 1) * R0 / (R0 - 1) ** 2


def bb_cumulants(p: ModelParams) -> ApproxCumulants:
    """Finite-N Bhowmick et al. cumulants (not their large-N expansions)."""
    _require_s1(p, MethodTag.BB)
    require_supercritical(p.R0)
    mu, R0, al, N = p.mu, p.R0, p.alpha, p.N
    H = bb_H(R0, al)
    k1 = (R0 - 1) / (R0 + al) * N / (1 + H / N)
    k2 = k1**2 * H / N
    A = mu * (R0 - 1) - mu * (R0 + al) / N * k1
    B = mu * (R0 + 1) / k1 - 2 * mu * (R0 - al) / N
    C = mu * (R0 - 1) / k1 - 2 * mu * (R0 + al) / N
    D = -mu * (R0 - al) / (N * k1)
    k3 = -(A + B) / (C + D) * k2
    return ApproxCumulants(
        k1, k2, k3, method=MethodTag.BB.value,
        terms={"kappa1": (k1,), "kappa2": (k2,), "kappa3": (k3,)},
    )


def bb_coefficients(R0: float, alpha: float) -> RivalCoeffSet:
    """Large-N expansion of the BB cumulants (three, two and one terms)."""
    require_supercritical(R0)
    K = (alpha + 1) * R0
    A = R0**2 + alpha
    Rp, Rm = R0 + alpha, R0 - 1
    return RivalCoeffSet(
        MethodTag.BB,
        x1=Rm / Rp,
        x2=-K / (Rp * Rm),
        x3=K**2 / (Rp * Rm**3),
        y1=K / Rp**2,
        y2=-2 * K**2 / (Rp**2 * Rm**2),
        z1=-K * (A - 4 * K) / (Rp**3 * Rm),
    )


def compose_rival(c: RivalCoeffSet, N: int) -> ApproxCumulants:
    missing = [f for f, ok in c.available.items() if not ok]
    if missing:
        raise ParameterError(f"{c.method.value} does not define {', '.join(missing)}")
    return compose(CoeffSet(*(getattr(c, f) for f in _FIELDS)), N, c.method.value)


def method_cumulants(method: MethodTag | str, p: ModelParams) -> ApproxCumulants:
    """Approximate kappa_1..kappa_3 at ``p`` under ``method``.

    BR1 and BR2 are composed from their coefficients as three-term kappa_1,
    two-term kappa_2 and one-term kappa_3.
    """
    method = MethodTag(method)
    if method in S1_ONLY:
        _require_s1(p, method)
    if method is MethodTag.PREFERRED:
        return approx_cumulants(p)
    if method is MethodTag.BGL:
        return bgl_cumulants(p)
    if method is MethodTag.BB:
        return bb_cumulants(p)
    table = {MethodTag.BR1: br1_coefficients, MethodTag.BR2: br2_coefficients}
    return compose_rival(table[method](p.R0, p.alpha), p.N)


def methods_for(s: float) -> list[MethodTag]:
    """Methods defined at exponent ``s``, in report order."""
    if s == 1:
        return list(MethodTag)
    return [MethodTag.PREFERRED]


