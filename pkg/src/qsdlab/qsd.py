"""Quasi-stationary distribution by iterating the restart map.

All probability arithmetic is done on natural logs: the ladder products
pi_n and rho_n span hundreds of decades for realistic N, and q_1 can sit
below 1e-70.

States are 1..N; array index ``i`` holds state ``i + 1``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .errors import DegenerateRates, NoConvergence, ParameterError
from .model import ModelParams, RateTable, rates

DEFAULT_TOL = 1e-13
DEFAULT_MAX_ITER = 100_000


@dataclass(frozen=True)
class ProbVector:
    """Normalized probability vector on states 1..N, stored as log-probabilities."""

    logp: np.ndarray

    def __post_init__(self):
        logp = np.array(self.logp, dtype=float)
        if logp.ndim != 1 or logp.size < 1:
            raise ParameterError("logp must be a non-empty 1-D array")
        if np.any(np.isnan(logp)) or np.any(logp == np.inf):
            raise ParameterError("logp contains NaN or +inf")
        logp.flags.writeable = False
        object.__setattr__(self, "logp", logp)

    @classmethod
    def from_log(cls, logp) -> "ProbVector":
        """Build from unnormalized log-weights."""
        logp = np.asarray(logp, dtype=float)
        return cls(logp - logsumexp(logp))

    @classmethod
    def from_probs(cls, p) -> "ProbVector":
        p = np.asarray(p, dtype=float)
        if np.any(p < 0) or not p.sum() > 0:
            raise ParameterError("probabilities must be nonnegative with positive sum")
        with np.errstate(divide="ignore"):
            return cls.from_log(np.log(p))

    @classmethod
    def point_mass(cls, N: int, state: int = 1) -> "ProbVector":
        if not 1 <= state <= N:
            raise ParameterError(f"state {state} outside 1..{N}")
        logp = np.full(N, -np.inf)
        logp[state - 1] = 0.0
        return cls(logp)

    @property
    def N(self) -> int:
        return self.logp.size

    @property
    def states(self) -> np.ndarray:
        return np.arange(1, self.N + 1)

    @property
    def p(self) -> np.ndarray:
        return np.exp(self.logp)

    def log_norm(self) -> float:
        return float(logsumexp(self.logp))


def tv_distance(u: ProbVector, v: ProbVector) -> float:
    """Total-variation distance, computed from log differences via expm1."""
    if u.N != v.N:
        raise ParameterError("vectors live on different state spaces")
    a, b = u.logp, v.logp
    hi = np.maximum(a, b)
    lo = np.minimum(a, b)
    both_zero = hi == -np.inf
    with np.errstate(invalid="ignore"):
        diff = np.where(both_zero, 0.0, -np.expm1(lo - hi) * np.exp(hi))
    return 0.5 * float(np.sum(diff))


@dataclass(frozen=True)
class LadderSequences:
    """log pi_n and log rho_n for n = 1..N (both start at 0)."""

    log_pi: np.ndarray
    log_rho: np.ndarray

    @property
    def N(self) -> int:
        return self.log_pi.size


@dataclass(frozen=True)
class QsdResult:
    q: ProbVector
    iterations: int
    residual: float

    @property
    def log_q1(self) -> float:
        return float(self.q.logp[0])

    @property
    def q1(self) -> float:
        return float(np.exp(self.q.logp[0]))


def ladders(r: RateTable) -> LadderSequences:
    N = r.N
    inner_births = r.lam[1:N]
    if np.any(inner_births <= 0):
        bad = int(np.flatnonzero(inner_births <= 0)[0]) + 1
        raise DegenerateRates(f"lambda_{bad} = 0 inside the state space")
    log_lam = np.log(inner_births)                # lambda_1..lambda_{N-1}
    log_death = np.log(r.death[1:])               # mu_1..mu_N
    log_pi = np.concatenate([[0.0], np.cumsum(log_lam - log_death[1:])])
    log_rho = np.concatenate([[0.0], np.cumsum(log_lam - log_death[:-1])])
    return LadderSequences(log_pi, log_rho)


def aux_stationary_0(L: LadderSequences) -> ProbVector:
    """Stationary distribution of the process with mu_1 set to zero."""
    return ProbVector.from_log(L.log_pi)


def aux_stationary_1(L: LadderSequences) -> ProbVector:
    """Stationary distribution of the process with one immortal individual."""
    return ProbVector.from_log(L.log_rho)


def _log_survival(logp: np.ndarray) -> np.ndarray:
    # log sum_{j >= k} nu_j, accumulated from the top state so that the
    # head of the vector never suffers 1 - (almost 1) cancellation.
    return np.logaddexp.accumulate(logp[::-1])[::-1]


def restart_map(nu: ProbVector, L: LadderSequences) -> ProbVector:
    """Stationary distribution of the process restarted from ``nu`` at extinction."""
    if nu.N != L.N:
        raise ParameterError("restart distribution and ladders differ in N")
    log_terms = _log_survival(nu.logp) - L.log_rho
    log_S = np.logaddexp.accumulate(log_terms)
    return ProbVector.from_log(L.log_pi + log_S)


def solve_qsd(
    p: ModelParams, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER
) -> QsdResult:
    """Iterate the restart map to its fixed point.

    Starts from p^(0) when R0 > 1 and from p^(1) otherwise; stops once the
    total-variation distance between successive iterates is at most ``tol``.
    """
    if not tol > 0:
        raise ParameterError(f"tol must be positive, got {tol}")
    if max_iter < 1:
        raise ParameterError(f"max_iter must be >= 1, got {max_iter}")
    L = ladders(rates(p))
    current = aux_stationary_0(L) if p.R0 > 1 else aux_stationary_1(L)
    residual = np.inf
    for it in range(1, max_iter + 1):
        nxt = restart_map(current, L)
        residual = tv_distance(nxt, current)
        current = nxt
        if residual <= tol:
            return QsdResult(current, it, residual)
    raise NoConvergence(max_iter, residual)


@functools.lru_cache(maxsize=256)
def cached_qsd(
    p: ModelParams, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER
) -> QsdResult:
    """Memoized :func:`solve_qsd`; results are immutable so sharing is safe."""
    return solve_qsd(p, tol, max_iter)


def sub_generator(r: RateTable) -> np.ndarray:
    """Generator restricted to the transient states 1..N (rows sum to -mu_1 at row 1)."""
    N = r.N
    Q = np.zeros((N, N))
    for i in range(N):
        n = i + 1
        Q[i, i] = -(r.lam[n] + r.death[n])
        if i + 1 < N:
            Q[i, i + 1] = r.lam[n]
        if i > 0:
            Q[i, i - 1] = r.death[n]
    return Q


def qsd_oracle_small(
    p: ModelParams, tol: float = 1e-15, max_iter: int = 200
) -> ProbVector:
    """QSD as the principal left eigenvector of the sub-generator.

    Independent of the restart-map solver: power iteration on the
    uniformized sub-stochastic matrix ``P = I + Q / Lambda``, accelerated by
    repeated squaring (each squaring doubles the number of power steps).
    ``max_iter`` bounds the number of squarings.
    """
    if p.N > 50:
        raise ParameterError(f"oracle is limited to N <= 50, got N = {p.N}")
    r = rates(p)
    return _power_qsd(r, tol, max_iter)


def _power_qsd(r: RateTable, tol: float, max_iter: int) -> ProbVector:
    Q = sub_generator(r)
    N = r.N
    uniform = 1.05 * float(np.max(-np.diag(Q)))
    P = np.eye(N) + Q / uniform
    M = P / P.max()
    v = np.full(N, 1.0 / N)
    residual = np.inf
    for _ in range(max_iter):
        M = M @ M
        M /= M.max()
        w = v @ M
        w /= w.sum()
        residual = 0.5 * float(np.abs(w - v).sum())
        v = w
        if residual <= tol:
            # a few plain power steps to clean up rounding from the squarings
            for _ in range(4):
                v = v @ P
                v /= v.sum()
            return ProbVector.from_probs(v)
    raise NoConvergence(max_iter, residual)


def qsd_equation_residual(r: RateTable, q: ProbVector) -> np.ndarray:
    """Per-state residual of the stationarity condition of the conditioned process."""
    qn = q.p
    N = r.N
    lam = r.lam[1:]
    death = r.death[1:]
    out = -(lam + death) * qn + death[0] * qn[0] * qn
    out[1:] += lam[:-1] * qn[:-1]
    out[:-1] += death[1:] * qn[1:]
    assert out.size == N
    return out
