"""Reproduction grids, error tables and the invariant checks behind ``verify``.

Every builder returns a list of flat dict rows with a fixed key order, so the
output writers can emit them as CSV or JSON without further knowledge.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

import numpy as np

from . import reference as ref
from .asymptotics import (
    approx_cumulants,
    coefficients,
    critical_point_residual,
    h_values,
    per_s_coefficients,
    s_thresholds,
)
from .cumulants import cumulants_of
from .errors import NoConvergence
from .model import ModelParams, rates
from .qsd import (
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
    cached_qsd,
    ladders,
    qsd_oracle_small,
    restart_map,
    solve_qsd,
    tv_distance,
)
from .rival import MethodTag, method_cumulants, methods_for

# ratio windows for errors that scale as 1/N^2, 1/N and 1 on doubling N
RATIO_WINDOWS = {1: (2.8, 5.7), 2: (1.4, 2.8), 3: (0.7, 1.4)}


@dataclass(frozen=True)
class TableSpec:
    """Parameter grid of one reproduction table."""

    id: int
    R0: Optional[float]
    alpha: Optional[float]
    s_values: tuple
    N_values: tuple = ()
    methods: tuple = (MethodTag.PREFERRED,)


TABLE_SPECS = {
    1: TableSpec(1, 2.0, 1.0, (1, 2, 3, 4), ref.TABLE_N_VALUES),
    2: TableSpec(2, 10.0, 1.0, (1, 4), ref.TABLE_N_VALUES),
    3: TableSpec(3, None, None, tuple(range(1, 11))),
    4: TableSpec(4, 10.0, 1.0, (0.5, 3.5), ref.TABLE_N_VALUES),
    5: TableSpec(
        5, 10.0, 1.0, (1,), ref.TABLE_N_VALUES,
        (MethodTag.PREFERRED, MethodTag.BR1, MethodTag.BB),
    ),
}


@dataclass(frozen=True)
class ApproxReport:
    """One error-table row; ``ratio`` is error(previous N) / error(N)."""

    N: int
    s: float
    method: str
    order: int
    numeric: float
    approx: float
    error: float
    ratio: float = math.nan


def within_sig_figs(value: float, published: float, digits: int) -> bool:
    """True when ``value`` is within one unit of the last shown digit of ``published``."""
    if published == 0:
        return value == 0
    unit = 10.0 ** (math.floor(math.log10(abs(published))) - digits + 1)
    return abs(value - published) <= unit * (1 + 1e-9)


def _params(R0, alpha, N, s, mu=1.0) -> ModelParams:
    return ModelParams(N=N, R0=R0, alpha=alpha, mu=mu, s=s)


def numeric_cumulants(p: ModelParams, max_order: int = 7, tol=DEFAULT_TOL,
                      max_iter=DEFAULT_MAX_ITER):
    return cumulants_of(cached_qsd(p, tol, max_iter).q, max_order)


def error_table(grid: TableSpec, methods: Optional[Iterable] = None,
                tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER) -> list[ApproxReport]:
    """Numeric-minus-approximate errors of kappa_1..kappa_3 over the grid."""
    methods = [MethodTag(m) for m in (methods or grid.methods)]
    out = []
    for method in methods:
        for s in grid.s_values:
            for order in (1, 2, 3):
                prev = None
                for N in grid.N_values:
                    p = _params(grid.R0, grid.alpha, N, s)
                    numeric = numeric_cumulants(p, 3, tol, max_iter)[order]
                    approx = method_cumulants(method, p)[order]
                    err = numeric - approx
                    ratio = prev / err if prev is not None and err != 0 else math.nan
                    out.append(ApproxReport(N, s, method.value, order, numeric,
                                            approx, err, ratio))
                    prev = err
    return out


def table1_rows(tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER) -> list[dict]:
    grid = TABLE_SPECS[1]
    rows = []
    for s in grid.s_values:
        for N in grid.N_values:
            res = cached_qsd(_params(grid.R0, grid.alpha, N, s), tol, max_iter)
            rows.append({"s": s, "N": N, "q1": res.q1, "log_q1": res.log_q1})
    return rows


def table2_rows(tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER) -> list[dict]:
    grid = TABLE_SPECS[2]
    rows = []
    for s in grid.s_values:
        for N in grid.N_values:
            k = numeric_cumulants(_params(grid.R0, grid.alpha, N, s), 7, tol, max_iter)
            rows.extend({"s": s, "N": N, "order": i, "kappa": k[i]} for i in range(1, 8))
    return rows


def table3_rows() -> list[dict]:
    rows = []
    for s in TABLE_SPECS[3].s_values:
        h = h_values(Fraction(s))
        row = {"s": s}
        row.update({f"h{i}": str(v) for i, v in enumerate(h, start=1)})
        rows.append(row)
    return rows


def _report_rows(reports: list[ApproxReport]) -> list[dict]:
    return [asdict(r) for r in reports]


def table_rows(table_id: int, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER) -> list[dict]:
    if table_id == 1:
        return table1_rows(tol, max_iter)
    if table_id == 2:
        return table2_rows(tol, max_iter)
    if table_id == 3:
        return table3_rows()
    if table_id in (4, 5):
        return _report_rows(error_table(TABLE_SPECS[table_id], tol=tol, max_iter=max_iter))
    raise ValueError(f"unknown table id {table_id}")


def figure1_rows(tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER) -> list[dict]:
    """(s, n, q_n) series of the QSD for the five exponents of the figure."""
    fp = ref.FIGURE1_PARAMS
    rows = []
    for s in ref.FIGURE1_S_VALUES:
        q = cached_qsd(_params(fp["R0"], fp["alpha"], fp["N"], s), tol, max_iter).q
        rows.extend({"s": s, "n": int(n), "q": float(v)} for n, v in zip(q.states, q.p))
    return rows


def figure1_summary(tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER) -> dict:
    """s -> (mean, variance, kappa_3) of the figure's QSDs."""
    fp = ref.FIGURE1_PARAMS
    out = {}
    for s in ref.FIGURE1_S_VALUES:
        k = numeric_cumulants(_params(fp["R0"], fp["alpha"], fp["N"], s), 3, tol, max_iter)
        out[s] = (k[1], k[2], k[3])
    return out


def solve_rows(p: ModelParams, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER) -> list[dict]:
    q = solve_qsd(p, tol, max_iter).q
    return [
        {"n": int(n), "q": float(v), "log_q": float(lv)}
        for n, v, lv in zip(q.states, q.p, q.logp)
    ]


def cumulant_rows(p: ModelParams, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER) -> list[dict]:
    k = cumulants_of(solve_qsd(p, tol, max_iter).q, 7)
    return [{"order": i, "kappa": k[i]} for i in range(1, 8)]


def approx_rows(p: ModelParams, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER) -> list[dict]:
    """Asymptotic kappa_1..kappa_3, with numeric values and errors when the solver converges."""
    approx = approx_cumulants(p)
    try:
        numeric = cumulants_of(solve_qsd(p, tol, max_iter).q, 3)
    except NoConvergence:
        numeric = None
    rows = []
    for i in (1, 2, 3):
        num = numeric[i] if numeric is not None else math.nan
        rows.append({
            "order": i,
            "approx": approx[i],
            "numeric": num,
            "error": num - approx[i],
        })
    return rows


def compare_rows(p: ModelParams, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER) -> list[dict]:
    """Per-method errors at N, 2N and 4N for the other parameters of ``p``."""
    p.require_supercritical()
    grid = TableSpec(0, p.R0, p.alpha, (p.s,), (p.N, 2 * p.N, 4 * p.N),
                     tuple(methods_for(p.s)))
    return _report_rows(error_table(grid, tol=tol, max_iter=max_iter))


# ---------------------------------------------------------------------------
# verify suite


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class _Checks:
    results: list = field(default_factory=list)

    def run(self, name: str, fn: Callable[[], tuple]) -> None:
        try:
            passed, detail = fn()
        except Exception as exc:  # a crashing check is a failed check
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        self.results.append(CheckResult(name, bool(passed), detail))


def check_mu_invariance():
    worst = 0.0
    for s in (1, 2.5):
        base = solve_qsd(ModelParams(60, 3.0, 1.0, 1.0, s)).q
        for mu in (0.5, 2.0):
            worst = max(worst, tv_distance(base, solve_qsd(ModelParams(60, 3.0, 1.0, mu, s)).q))
    return worst <= 1e-12, f"max TV over mu in (0.5, 1, 2) = {worst:.2e}"


def check_oracle_equivalence():
    worst = 0.0
    for N in (5, 20):
        for R0 in (0.5, 2.0, 10.0):
            for s in (1, 3.5):
                p = ModelParams(N, R0, 1.0, 1.0, s)
                worst = max(worst, tv_distance(solve_qsd(p).q, qsd_oracle_small(p)))
    return worst <= 1e-9, f"max TV vs power-iteration oracle = {worst:.2e}"


def check_normalization_and_fixed_point():
    worst_norm = worst_fix = 0.0
    for p in (ModelParams(100, 2.0, 1.0, 1.0, 1), ModelParams(400, 10.0, 1.0, 1.0, 4),
              ModelParams(50, 0.8, 0.0, 1.0, 0.5)):
        q = solve_qsd(p).q
        worst_norm = max(worst_norm, abs(math.fsum(q.p) - 1))
        worst_fix = max(worst_fix, tv_distance(restart_map(q, ladders(rates(p))), q))
    ok = worst_norm <= 1e-10 and worst_fix <= 1e-12
    return ok, f"|sum q - 1| <= {worst_norm:.1e}, TV(Psi q, q) <= {worst_fix:.1e}"


def check_h_table():
    table = ref.h_table_fractions()
    bad = [s for s, row in table.items() if tuple(h_values(Fraction(s))) != row]
    return not bad, "all 50 entries exact" if not bad else f"mismatch at s={bad}"


def check_general_vs_per_s():
    worst = 0.0
    for R0, alpha in ((2.0, 1.0), (10.0, 1.0), (1.5, 0.0), (5.0, 3.0)):
        for s in (1, 2, 3, 4):
            g = coefficients(R0, alpha, s).as_dict()
            c = per_s_coefficients(R0, alpha, s).as_dict()
            worst = max(worst, max(abs(g[k] - c[k]) / max(abs(c[k]), 1e-300) for k in g))
    return worst <= 1e-12, f"max relative difference {worst:.1e}"


def critical_point_ratios(R0: float, alpha: float, s: int,
                          Ns=(1000, 2000, 4000)) -> dict:
    """Halving ratios of |A|, |B|, |C| of the truncated approximation."""
    res = [critical_point_residual(ModelParams(N, R0, alpha, 1.0, s)) for N in Ns]
    return {
        name: [abs(res[i][j]) / abs(res[i + 1][j]) for i in range(len(Ns) - 1)]
        for j, name in enumerate("ABC")
    }


def check_critical_point_scaling():
    details = []
    ok = True
    for s in (1, 2, 3, 4):
        ratios = critical_point_ratios(10.0, 1.0, s)
        for order, name in zip((1, 2, 3), "ABC"):
            lo, hi = RATIO_WINDOWS[order]
            ok &= all(lo <= r <= hi for r in ratios[name])
        details.append(f"s={s}: " + " ".join(
            f"{k}={'/'.join(f'{r:.2f}' for r in v)}" for k, v in ratios.items()))
    return ok, "; ".join(details)


def structural_claims(R0: float = 5.0, alpha: float = 1.0, step: float = 1e-3) -> dict:
    s2, s3 = s_thresholds(R0, alpha)
    grid = np.arange(step, 5.0 + step / 2, step)
    coeffs = [coefficients(R0, alpha, float(s)) for s in grid]
    x1 = np.array([c.x1 for c in coeffs])
    y1 = np.array([c.y1 for c in coeffs])
    z1 = np.array([c.z1 for c in coeffs])
    argmax = float(grid[int(np.argmax(y1))])
    flips = grid[1:][np.sign(z1[1:]) != np.sign(z1[:-1])]
    return {
        "s2": s2,
        "s3": s3,
        "x1_increasing": bool(np.all(np.diff(x1) > 0)),
        "y1_argmax": argmax,
        "argmax_ok": abs(argmax - s2) <= step,
        "z1_flips": [float(f) for f in flips],
        "flip_ok": len(flips) == 1 and flips[0] - step <= s3 <= flips[0],
        "z1_sign_below": float(np.sign(coefficients(R0, alpha, s3 * 0.999).z1)),
        "z1_sign_above": float(np.sign(coefficients(R0, alpha, s3 * 1.001).z1)),
    }


def check_structural_claims():
    c = structural_claims()
    ok = (c["x1_increasing"] and c["argmax_ok"] and c["flip_ok"]
          and c["z1_sign_below"] != c["z1_sign_above"]
          and within_sig_figs(c["s2"], ref.THRESHOLDS_R0_5_ALPHA_1["s2"], 4)
          and within_sig_figs(c["s3"], ref.THRESHOLDS_R0_5_ALPHA_1["s3"], 4))
    return ok, f"s2={c['s2']:.4f} argmax={c['y1_argmax']:.3f} s3={c['s3']:.4f} flips={c['z1_flips']}"


def check_table1():
    bad = [
        (r["s"], r["N"]) for r in table1_rows()
        if not within_sig_figs(r["q1"], ref.Q1_TABLE[r["s"]][r["N"]], ref.Q1_SIG_FIGS)
    ]
    return not bad, "12/12 q1 values" if not bad else f"mismatch at {bad}"


def check_table2():
    bad = [
        (r["s"], r["N"], r["order"]) for r in table2_rows()
        if not within_sig_figs(
            r["kappa"], ref.CUMULANT_TABLE[r["s"]][r["N"]][r["order"] - 1],
            ref.CUMULANT_SIG_FIGS)
    ]
    return not bad, "42/42 cumulants" if not bad else f"mismatch at {bad}"


def _check_error_rows(rows: list[ApproxReport], lookup) -> tuple:
    bad_value, bad_ratio = [], []
    for r in rows:
        if not within_sig_figs(r.error, lookup(r), ref.ERROR_SIG_FIGS):
            bad_value.append((r.method, r.s, r.order, r.N))
        if r.method == MethodTag.PREFERRED.value and not math.isnan(r.ratio):
            lo, hi = RATIO_WINDOWS[r.order]
            if not lo <= r.ratio <= hi:
                bad_ratio.append((r.s, r.order, r.N, round(r.ratio, 3)))
    ok = not bad_value and not bad_ratio
    detail = f"{len(rows)} errors checked"
    if bad_value:
        detail += f"; value mismatch {bad_value}"
    if bad_ratio:
        detail += f"; ratio outside window {bad_ratio}"
    return ok, detail


def check_table4():
    rows = error_table(TABLE_SPECS[4])
    return _check_error_rows(rows, lambda r: ref.ERROR_TABLE_NONINT[r.s][r.order][r.N])


def check_table5():
    rows = error_table(TABLE_SPECS[5])
    return _check_error_rows(rows, lambda r: ref.ERROR_TABLE_METHODS[r.method][r.order][r.N])


def check_figure1():
    f = figure1_summary()
    s_vals = ref.FIGURE1_S_VALUES
    means = [f[s][0] for s in s_vals]
    ok = (all(b > a for a, b in zip(means, means[1:]))
          and f[0.5][1] > f[0.2][1] and f[0.5][1] > f[10.0][1]
          and f[0.2][2] > 0 and all(f[s][2] < 0 for s in (1.0, 3.0, 10.0)))
    return ok, "; ".join(f"s={s}: mean={m:.2f} var={v:.2f} k3={k:.2f}"
                         for s, (m, v, k) in f.items())


VERIFY_CHECKS = (
    ("mu_invariance", check_mu_invariance),
    ("oracle_equivalence", check_oracle_equivalence),
    ("normalization_fixed_point", check_normalization_and_fixed_point),
    ("h_table", check_h_table),
    ("general_vs_per_s_coefficients", check_general_vs_per_s),
    ("critical_point_scaling", check_critical_point_scaling),
    ("structural_claims", check_structural_claims),
    ("table1_q1", check_table1),
    ("table2_cumulants", check_table2),
    ("table4_errors", check_table4),
    ("table5_errors", check_table5),
    ("figure1_trends", check_figure1),
)


def verify() -> list[CheckResult]:
    checks = _Checks()
    for name, fn in VERIFY_CHECKS:
        checks.run(name, fn)
    return checks.results
