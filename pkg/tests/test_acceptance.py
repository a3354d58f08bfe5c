"""Acceptance criteria 1-9, each at its stated tolerance.

"Matches to t significant figures" means the computed value lies within one
unit of the t-th significant digit of the published value.
"""

import time
from fractions import Fraction

import numpy as np
import pytest

from qsdlab import reference as ref
from qsdlab.asymptotics import approx_cumulants, coefficients, critical_point_residual, h_values, s_thresholds
from qsdlab.cumulants import cumulants_of
from qsdlab.harness import within_sig_figs
from qsdlab.model import ModelParams
from qsdlab.qsd import qsd_oracle_small, solve_qsd, tv_distance
from qsdlab.rival import method_cumulants

pytestmark = pytest.mark.acceptance

WINDOWS = {1: (2.8, 5.7), 2: (1.4, 2.8), 3: (0.7, 1.4)}
NS = ref.TABLE_N_VALUES


def test_criterion_1_table1_q1(criterion):
    start = time.perf_counter()
    bad = []
    for s, row in ref.Q1_TABLE.items():
        for N, published in row.items():
            q1 = solve_qsd(ModelParams(N, 2.0, 1.0, 1.0, s)).q1
            if not within_sig_figs(q1, published, 3):
                bad.append((s, N, q1, published))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 30
    assert criterion(1, ok, f"12 q1 values, {len(bad)} mismatches, {elapsed:.2f}s {bad}")


def test_criterion_2_table2_cumulants(criterion):
    start = time.perf_counter()
    bad, count = [], 0
    for s, by_n in ref.CUMULANT_TABLE.items():
        for N, published in by_n.items():
            k = cumulants_of(solve_qsd(ModelParams(N, 10.0, 1.0, 1.0, s)).q, 7)
            for order, value in enumerate(published, start=1):
                count += 1
                if not within_sig_figs(k[order], value, 3):
                    bad.append((s, N, order, k[order], value))
    elapsed = time.perf_counter() - start
    ok = not bad and count == 42 and elapsed < 60
    assert criterion(2, ok, f"{count} cumulants, {len(bad)} mismatches, {elapsed:.2f}s {bad}")


def test_criterion_3_table3_h_values(criterion):
    bad, count = [], 0
    for s, row in ref.H_TABLE.items():
        for computed, printed in zip(h_values(float(s)), row):
            count += 1
            if abs(computed - float(Fraction(printed))) > 1e-15:
                bad.append((s, printed, computed))
    ok = not bad and count == 50
    assert criterion(3, ok, f"{count} rational entries, {len(bad)} mismatches {bad}")


def _errors(method, s):
    """error[order][N] = numeric kappa - approximate kappa at R0 = 10, alpha = 1."""
    out = {1: {}, 2: {}, 3: {}}
    for N in NS:
        p = ModelParams(N, 10.0, 1.0, 1.0, s)
        numeric = cumulants_of(solve_qsd(p).q, 3)
        approx = approx_cumulants(p) if method == "PREFERRED" else method_cumulants(method, p)
        for order in (1, 2, 3):
            out[order][N] = numeric[order] - approx[order]
    return out


def test_criterion_4_table4_errors(criterion):
    bad_value, bad_ratio, count = [], [], 0
    for s, published in ref.ERROR_TABLE_NONINT.items():
        errs = _errors("PREFERRED", s)
        for order in (1, 2, 3):
            for N in NS:
                count += 1
                if not within_sig_figs(errs[order][N], published[order][N], 2):
                    bad_value.append((s, order, N, errs[order][N]))
            lo, hi = WINDOWS[order]
            for a, b in zip(NS, NS[1:]):
                ratio = errs[order][a] / errs[order][b]
                if not lo <= ratio <= hi:
                    bad_ratio.append((s, order, a, ratio))
    ok = not bad_value and not bad_ratio and count == 18
    assert criterion(4, ok, f"{count} errors, value mismatches {bad_value}, ratio misses {bad_ratio}")


def test_criterion_5_table5_errors(criterion):
    bad, count = [], 0
    for method, published in ref.ERROR_TABLE_METHODS.items():
        errs = _errors(method, 1)
        for order in (1, 2, 3):
            for N in NS:
                count += 1
                if not within_sig_figs(errs[order][N], published[order][N], 2):
                    bad.append((method, order, N, errs[order][N], published[order][N]))
    ok = not bad and count == 27
    assert criterion(5, ok, f"{count} errors over 3 methods, {len(bad)} mismatches {bad}")


def test_criterion_6_oracle_equivalence(criterion):
    worst, count = 0.0, 0
    for N in range(2, 31):
        for R0 in (0.5, 2.0, 10.0):
            for alpha in (0.0, 1.0):
                for s in (1, 2, 3.5):
                    p = ModelParams(N, R0, alpha, 1.0, s)
                    worst = max(worst, tv_distance(solve_qsd(p).q, qsd_oracle_small(p)))
                    count += 1
    ok = worst <= 1e-9
    assert criterion(6, ok, f"{count} grid points, max TV {worst:.2e}")


def test_criterion_7_critical_point_scaling(criterion):
    Ns = (1000, 2000, 4000)
    misses, lines = [], []
    for R0, alpha in ((10.0, 1.0), (2.0, 1.0), (5.0, 0.0)):
        for s in (1, 2, 3, 4):
            res = [critical_point_residual(ModelParams(N, R0, alpha, 1.0, s)) for N in Ns]
            for order, name in zip((1, 2, 3), "ABC"):
                lo, hi = WINDOWS[order]
                ratios = [abs(a[order - 1]) / abs(b[order - 1]) for a, b in zip(res, res[1:])]
                if not all(lo <= r <= hi for r in ratios):
                    misses.append((R0, alpha, s, name, ratios))
                if (R0, alpha) == (10.0, 1.0):
                    lines.append(f"s={s}{name}:{ratios[0]:.2f}/{ratios[1]:.2f}")
    ok = not misses
    assert criterion(7, ok, f"halving ratios {' '.join(lines)}; misses {misses}")


def test_criterion_8_structural_claims(criterion):
    R0, alpha = 5.0, 1.0
    step = 1e-3
    grid = np.arange(step, 4.0 + step / 2, step)
    x1 = np.array([coefficients(R0, alpha, s).x1 for s in grid])
    y1 = np.array([coefficients(R0, alpha, s).y1 for s in grid])
    z1 = np.array([coefficients(R0, alpha, s).z1 for s in grid])
    s2, s3 = s_thresholds(R0, alpha)
    increasing = bool(np.all(np.diff(x1) > 0))
    argmax = float(grid[np.argmax(y1)])
    flips = np.flatnonzero(np.sign(z1[1:]) != np.sign(z1[:-1]))
    flip_ok = (
        len(flips) == 1
        and grid[flips[0]] <= s3 <= grid[flips[0] + 1]
        and coefficients(R0, alpha, s3 * (1 - 1e-9)).z1 > 0
        and coefficients(R0, alpha, s3 * (1 + 1e-9)).z1 < 0
    )
    quoted = round(s2, 4) == 0.4055 and round(s3, 4) == 0.3846
    ok = increasing and abs(argmax - s2) <= step and flip_ok and quoted
    detail = (f"x1 increasing={increasing}, argmax y1={argmax:.3f} vs s2={s2:.4f}, "
              f"z1 sign flip at s3={s3:.4f}: {flip_ok}")
    assert criterion(8, ok, detail)


def test_criterion_9_figure1_trends(criterion):
    stats = {}
    for s in ref.FIGURE1_S_VALUES:
        k = cumulants_of(solve_qsd(ModelParams(100, 5.0, 1.0, 1.0, s)).q, 3)
        stats[s] = (k[1], k[2], k[3])
    means = [stats[s][0] for s in ref.FIGURE1_S_VALUES]
    ok = (
        all(b > a for a, b in zip(means, means[1:]))
        and stats[0.5][1] > stats[0.2][1]
        and stats[0.5][1] > stats[10.0][1]
        and stats[0.2][2] > 0
        and all(stats[s][2] < 0 for s in (1.0, 3.0, 10.0))
    )
    detail = " ".join(f"s={s}:({m:.1f},{v:.1f},{k3:.1f})" for s, (m, v, k3) in stats.items())
    assert criterion(9, ok, f"(mean, var, k3) {detail}")


def test_published_values_transcribed_consistently():
    # spot checks quoted alongside the criteria
    assert ref.Q1_TABLE[1][100] == 1.30e-5 and ref.Q1_TABLE[4][400] == 0.264e-72
    assert ref.CUMULANT_TABLE[1][100][0] == 81.6 and ref.CUMULANT_TABLE[1][100][4] == -0.532
    assert ref.CUMULANT_TABLE[4][400][6] == -36.6
    assert ref.ERROR_TABLE_NONINT[0.5][1][100] == -227e-6
    assert ref.ERROR_TABLE_METHODS["BB"][3][200] == -20.3
    assert ref.ERROR_TABLE_METHODS["BR1"][3][400] == -82
