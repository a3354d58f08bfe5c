"""Command-line front end.

    qsdlab solve --N 100 --R0 2 --alpha 1 --s 1
    qsdlab table --id 4 --format json --out table4.json
    qsdlab verify

Exit codes: 0 success, 1 a verify check failed, 2 invalid parameters,
3 solver did not converge, 4 I/O error.  Errors are reported on stderr as a
one-line JSON record.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional

from . import harness
from .errors import NoConvergence, ParameterError
from .model import ModelParams
from .output import render
from .qsd import DEFAULT_MAX_ITER, DEFAULT_TOL

COMMANDS = ("solve", "cumulants", "approx", "compare", "table", "figure1", "verify")

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_VALIDATION = 2
EXIT_CONVERGENCE = 3
EXIT_IO = 4


@dataclass(frozen=True)
class RunConfig:
    command: str
    params: ModelParams
    tol: float = DEFAULT_TOL
    max_iter: int = DEFAULT_MAX_ITER
    out_format: str = "csv"
    out_path: Optional[str] = None
    table_id: Optional[int] = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ParameterError(f"unknown command {self.command!r}")
        if not self.tol > 0:
            raise ParameterError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise ParameterError(f"max-iter must be >= 1, got {self.max_iter}")
        if self.out_format not in ("csv", "json"):
            raise ParameterError(f"unknown format {self.out_format!r}")
        if self.command == "table" and self.table_id not in harness.TABLE_SPECS:
            raise ParameterError(f"table id must be 1..5, got {self.table_id}")


def build_rows(cfg: RunConfig) -> tuple[list[dict], int]:
    """Rows for ``cfg`` and the exit code they imply."""
    p, tol, it = cfg.params, cfg.tol, cfg.max_iter
    if cfg.command == "solve":
        return harness.solve_rows(p, tol, it), EXIT_OK
    if cfg.command == "cumulants":
        return harness.cumulant_rows(p, tol, it), EXIT_OK
    if cfg.command == "approx":
        return harness.approx_rows(p, tol, it), EXIT_OK
    if cfg.command == "compare":
        return harness.compare_rows(p, tol, it), EXIT_OK
    if cfg.command == "table":
        return harness.table_rows(cfg.table_id, tol, it), EXIT_OK
    if cfg.command == "figure1":
        return harness.figure1_rows(tol, it), EXIT_OK
    results = harness.verify()
    rows = [{"check": r.name, "passed": r.passed, "detail": r.detail} for r in results]
    code = EXIT_OK if all(r.passed for r in results) else EXIT_CHECK_FAILED
    return rows, code


def _error_record(exc: BaseException, code: int) -> str:
    return json.dumps({"error": type(exc).__name__, "message": str(exc), "exit_code": code})


def run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        rows, code = build_rows(cfg)
    except ParameterError as exc:
        print(_error_record(exc, EXIT_VALIDATION), file=stderr)
        return EXIT_VALIDATION
    except NoConvergence as exc:
        print(_error_record(exc, EXIT_CONVERGENCE), file=stderr)
        return EXIT_CONVERGENCE
    text = render(rows, cfg.out_format)
    try:
        if cfg.out_path is None or cfg.out_path == "-":
            stdout.write(text)
        else:
            with open(cfg.out_path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
    except OSError as exc:
        print(_error_record(exc, EXIT_IO), file=stderr)
        return EXIT_IO
    return code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--N", type=int, default=100, help="maximum population size")
    common.add_argument("--R0", type=float, default=2.0, help="basic reproduction number")
    common.add_argument("--alpha", type=float, default=1.0, help="death-rate crowding factor")
    common.add_argument("--mu", type=float, default=1.0, help="per-capita death rate scale")
    common.add_argument("--s", type=float, default=1.0, help="power-law exponent")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL,
                        help="total-variation stopping tolerance")
    common.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER, dest="max_iter")
    common.add_argument("--format", choices=("csv", "json"), default="csv", dest="out_format")
    common.add_argument("--out", default=None, dest="out_path", help="output file (default stdout)")

    parser = argparse.ArgumentParser(
        prog="qsdlab",
        description="Quasi-stationary distributions and cumulant approximations "
                    "of the power-law logistic birth-death process.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("solve", parents=[common], help="QSD rows (n, q_n, log q_n)")
    sub.add_parser("cumulants", parents=[common], help="kappa_1..kappa_7 of the QSD")
    sub.add_parser("approx", parents=[common],
                   help="asymptotic kappa_1..kappa_3 and their errors")
    sub.add_parser("compare", parents=[common],
                   help="per-method errors at N, 2N and 4N")
    table = sub.add_parser("table", parents=[common], help="regenerate a reproduction table")
    table.add_argument("--id", type=int, required=True, choices=sorted(harness.TABLE_SPECS),
                       dest="table_id")
    sub.add_parser("figure1", parents=[common], help="(s, n, q_n) series for five exponents")
    sub.add_parser("verify", parents=[common], help="run the invariant checks")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    params = ModelParams(N=ns.N, R0=ns.R0, alpha=ns.alpha, mu=ns.mu, s=ns.s)
    return RunConfig(
        command=ns.command,
        params=params,
        tol=ns.tol,
        max_iter=ns.max_iter,
        out_format=ns.out_format,
        out_path=ns.out_path,
        table_id=getattr(ns, "table_id", None),
    )


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except ParameterError as exc:
        print(_error_record(exc, EXIT_VALIDATION), file=sys.stderr)
        return EXIT_VALIDATION
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
