import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsdlab.errors import DegenerateRates, NoConvergence, ParameterError
from qsdlab.model import ModelParams, RateTable, rates
from qsdlab.qsd import (
    ProbVector,
    _power_qsd,
    aux_stationary_0,
    aux_stationary_1,
    ladders,
    qsd_equation_residual,
    qsd_oracle_small,
    restart_map,
    solve_qsd,
    tv_distance,
)


def hand_rates():
    # lambda_1 = 2, lambda_2 = 1; mu_1 = 1, mu_2 = 2, mu_3 = 3
    return RateTable(np.array([0.0, 2.0, 1.0, 0.0]), np.array([0.0, 1.0, 2.0, 3.0]))


def test_ladders_hand_example():
    L = ladders(hand_rates())
    np.testing.assert_allclose(np.exp(L.log_pi), [1, 1, 1 / 3])
    np.testing.assert_allclose(np.exp(L.log_rho), [1, 2, 1])


def test_aux_stationary_hand_example():
    L = ladders(hand_rates())
    np.testing.assert_allclose(aux_stationary_0(L).p, [3 / 7, 3 / 7, 1 / 7])
    np.testing.assert_allclose(aux_stationary_1(L).p, [1 / 4, 1 / 2, 1 / 4])


def test_single_state_is_point_mass():
    r = RateTable(np.array([0.0, 0.0]), np.array([0.0, 1.0]))
    L = ladders(r)
    assert aux_stationary_0(L).p.tolist() == [1.0]
    assert aux_stationary_1(L).p.tolist() == [1.0]
    assert _power_qsd(r, 1e-15, 50).p.tolist() == [1.0]


def test_restart_map_two_state_example():
    r = RateTable(np.array([0.0, 1.0, 0.0]), np.array([0.0, 1.0, 1.0]))
    L = ladders(r)
    out = restart_map(ProbVector.point_mass(2, 1), L)
    np.testing.assert_allclose(out.p, [0.5, 0.5])


def test_ladder_ratio_identity():
    r = rates(ModelParams(100, 2.0, 1.0, 1.0, 1))
    L = ladders(r)
    np.testing.assert_allclose(
        L.log_rho - L.log_pi, np.log(r.death[1:]) - math.log(r.death[1]), atol=1e-12
    )


def test_detailed_balance_of_auxiliary_distributions():
    r = rates(ModelParams(100, 2.0, 1.0, 1.0, 1))
    L = ladders(r)
    p0 = aux_stationary_0(L).p
    p1 = aux_stationary_1(L).p
    lam, death = r.lam, r.death
    n = np.arange(2, 101)
    np.testing.assert_allclose(death[n] * p0[n - 1] / (lam[n - 1] * p0[n - 2]), 1, atol=1e-10)
    np.testing.assert_allclose(death[n - 1] * p1[n - 1] / (lam[n - 1] * p1[n - 2]), 1, atol=1e-10)


def test_degenerate_rates_rejected():
    r = RateTable(np.array([0.0, 1.0, 0.0, 1.0, 0.0]), np.ones(5) * [0, 1, 1, 1, 1])
    with pytest.raises(DegenerateRates):
        ladders(r)


def test_restart_map_output_well_formed():
    L = ladders(rates(ModelParams(100, 2.0, 1.0, 1.0, 1)))
    p0 = aux_stationary_0(L)
    out = restart_map(p0, L)
    assert abs(out.log_norm()) <= 1e-12
    assert tv_distance(out, p0) < 1


def test_table_example_q1():
    assert solve_qsd(ModelParams(100, 2.0, 1.0, 1.0, 1)).q1 == pytest.approx(1.30e-5, rel=5e-3)
    assert solve_qsd(ModelParams(400, 2.0, 1.0, 1.0, 4)).q1 == pytest.approx(0.264e-72, rel=5e-3)


def test_fixed_point_and_normalization():
    for p in (ModelParams(100, 2.0, 1.0, 1.0, 1), ModelParams(200, 0.7, 0.5, 1.0, 2.5)):
        res = solve_qsd(p)
        assert res.residual <= 1e-13
        assert abs(res.q.log_norm()) <= 1e-12
        assert np.all(res.q.logp <= 1e-12)
        again = restart_map(res.q, ladders(rates(p)))
        assert tv_distance(again, res.q) <= 1e-12


def test_small_example_matches_eigenvector():
    p = ModelParams(3, 2.0, 0.0, 1.0, 1)
    assert tv_distance(solve_qsd(p).q, qsd_oracle_small(p)) <= 1e-10


def test_no_convergence_reported():
    with pytest.raises(NoConvergence) as info:
        solve_qsd(ModelParams(30, 0.5, 1.0, 1.0, 1), tol=1e-300, max_iter=1)
    assert info.value.max_iter == 1 and info.value.residual > 0


def test_bad_solver_arguments():
    p = ModelParams(10, 2.0)
    with pytest.raises(ParameterError):
        solve_qsd(p, tol=0.0)
    with pytest.raises(ParameterError):
        solve_qsd(p, max_iter=0)
    with pytest.raises(ParameterError):
        qsd_oracle_small(ModelParams(51, 2.0))


def test_tv_distance_basic():
    a = ProbVector.from_probs([0.5, 0.5, 0.0])
    b = ProbVector.from_probs([0.0, 0.5, 0.5])
    assert tv_distance(a, b) == pytest.approx(0.5)
    assert tv_distance(a, a) == 0.0


ORACLE_GRID = [
    (N, R0, alpha, s)
    for N in range(2, 31)
    for R0 in (0.5, 2.0, 10.0)
    for alpha in (0.0, 1.0)
    for s in (1, 2, 3.5)
]


def test_oracle_equivalence_full_grid():
    worst = 0.0
    for N, R0, alpha, s in ORACLE_GRID:
        p = ModelParams(N, R0, alpha, 1.0, s)
        worst = max(worst, tv_distance(solve_qsd(p).q, qsd_oracle_small(p)))
    assert worst <= 1e-9


@settings(max_examples=40, deadline=None)
@given(
    N=st.integers(2, 40),
    R0=st.floats(0.2, 20),
    alpha=st.floats(0, 5),
    s=st.floats(0.2, 6),
)
def test_oracle_equivalence_property(N, R0, alpha, s):
    p = ModelParams(N, R0, alpha, 1.0, s)
    assert tv_distance(solve_qsd(p).q, qsd_oracle_small(p)) <= 1e-9


@settings(max_examples=40, deadline=None)
@given(
    N=st.integers(2, 50),
    R0=st.floats(0.2, 20),
    alpha=st.floats(0, 5),
    s=st.floats(0.2, 6),
)
def test_qsd_equation_residual(N, R0, alpha, s):
    p = ModelParams(N, R0, alpha, 1.0, s)
    r = rates(p)
    q = solve_qsd(p).q
    scale = float(np.max(r.lam + r.death))
    assert np.max(np.abs(qsd_equation_residual(r, q))) <= 1e-10 * scale


@pytest.mark.parametrize("s", [1, 2, 3, 4])
def test_q1_exponentially_small(s):
    logs = {N: solve_qsd(ModelParams(N, 2.0, 1.0, 1.0, s)).log_q1 for N in (100, 200, 400)}
    for N in (100, 200):
        assert 1.8 <= logs[2 * N] / logs[N] <= 2.2


@settings(max_examples=30, deadline=None)
@given(
    N=st.integers(2, 300),
    R0=st.floats(0.2, 20),
    alpha=st.floats(0, 5),
    mu=st.floats(0.1, 10),
    s=st.floats(0.2, 6),
)
def test_mu_invariance(N, R0, alpha, mu, s):
    a = solve_qsd(ModelParams(N, R0, alpha, 1.0, s)).q
    b = solve_qsd(ModelParams(N, R0, alpha, mu, s)).q
    assert tv_distance(a, b) <= 1e-11
