"""Command-line front end: single evaluations, golden tables, sweeps, self-test.

Subcommands:
    eval      one moment evaluation by a chosen method
    table     regenerate the built-in golden reference tables (1 or 2)
    sweep     evaluate a parameter grid with one or more methods
    selftest  scan the recurrence-consistency deviation over a region

Exit codes: 0 success, 1 usage/domain error, 2 convergence failure,
3 self-test failure.  All numeric output uses 17 significant digits and
identical invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError
from .nuttall import (DEFAULT_MAX_TERMS, DEFAULT_TOL, MomentQuery, marcum_q,
                      consistency_deviation, nuttall_q_homogeneous,
                      nuttall_q_ladder, nuttall_q_series)
from .incgamma import _gamma_ratio_parts, gamma_ratio_q
from .quadrature import _integrate_with_stats, truncation_bounds

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NO_CONVERGENCE = 2
EXIT_SELFTEST_FAIL = 3

METHODS = ("series", "ladder", "homogeneous", "quadrature")

# Golden fixture: (eta, mu, x, y) rows of reference table 1.
TABLE1_PARAMS = (
    (1.0, 1.0, 0.1, 1.5),
    (5.0, 10.0, 0.1, 1.5),
    (50.0, 30.0, 0.1, 1.5),
    (1.0, 1.0, 1.2, 5.0),
    (5.0, 10.0, 1.2, 5.0),
    (50.0, 30.0, 1.2, 5.0),
    (1.0, 1.0, 5.0, 10.0),
    (5.0, 10.0, 5.0, 10.0),
    (50.0, 30.0, 5.0, 10.0),
)
TABLE2_ETA = 2
TABLE2_X = 2.0
TABLE2_Y = 3.0
TABLE2_NS = (10, 20, 30, 40, 50, 60)

SELFTEST_THRESHOLD = 1e-12
_DEFAULT_REGION = {
    "eta": (1.0, 49.0),
    "mu": (1.0, 50.0),
    "x": (0.1, 20.0),
    "y": (0.1, 20.0),
}


@dataclass(frozen=True)
class SweepConfig:
    """Grid axes (lo, hi, steps), method subset, and series tolerance."""

    eta_range: tuple[float, float, int]
    mu_range: tuple[float, float, int]
    x_range: tuple[float, float, int]
    y_range: tuple[float, float, int]
    methods: tuple[str, ...]
    tol: float = DEFAULT_TOL

    def __post_init__(self) -> None:
        for name in ("eta_range", "mu_range", "x_range", "y_range"):
            lo, hi, steps = getattr(self, name)
            if not lo <= hi:
                raise DomainError(f"{name}: lo must be <= hi, got {lo} > {hi}")
            if steps < 1:
                raise DomainError(f"{name}: steps must be >= 1, got {steps}")
        if not self.methods:
            raise DomainError("at least one method must be selected")
        for m in self.methods:
            if m not in METHODS:
                raise DomainError(f"unknown method {m!r}")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(message)


def _fmt(v: float) -> str:
    return format(v, ".17g")


def _linspace(lo: float, hi: float, steps: int) -> list[float]:
    if steps == 1:
        return [lo]
    return [lo + i * (hi - lo) / (steps - 1) for i in range(steps)]


def _parse_range(text: str, steps_default: int) -> tuple[float, float, int]:
    parts = text.split(":")
    try:
        if len(parts) == 1:
            v = float(parts[0])
            return (v, v, 1)
        if len(parts) == 2:
            return (float(parts[0]), float(parts[1]), steps_default)
        if len(parts) == 3:
            return (float(parts[0]), float(parts[1]), int(parts[2]))
    except ValueError as exc:
        raise _UsageError(f"bad range {text!r}: {exc}") from exc
    raise _UsageError(f"bad range {text!r}: expected lo[:hi[:steps]]")


def _recurrence_start(mu: float) -> tuple[float, int]:
    """mu_start and column count so the ladder actually recurses up to mu."""
    back = int(math.floor(mu - 1e-12))
    back = max(back, 0)
    mu_start = mu - back
    if mu_start <= 0.0:
        back -= 1
        mu_start = mu - back
    return mu_start, back + 1


def _eval_one(q: MomentQuery, method: str, tol: float,
              max_terms: int) -> tuple[float, int, float, bool]:
    """(value, terms_or_nodes, est_error, converged) for one evaluation."""
    if method == "series":
        out = nuttall_q_series(q, tol, max_terms)
        return out.value, out.terms_used, out.est_error, out.converged
    if method == "quadrature":
        value, nodes, diff = _integrate_with_stats(q, truncation_bounds(q))
        return value, nodes, diff, True
    # Recurrence methods: integer eta, x > 0.
    if not float(q.eta).is_integer():
        raise DomainError(f"method {method!r} requires integer eta, got {q.eta!r}")
    eta = int(q.eta)
    mu_start, n_cols = _recurrence_start(q.mu)
    if method == "ladder":
        table = nuttall_q_ladder(eta, mu_start, n_cols, q.x, q.y, tol, max_terms)
        return table.entry(eta, n_cols - 1), (eta + 1) * n_cols, tol, True
    if method == "homogeneous":
        if eta < 1:
            raise DomainError("homogeneous recurrence requires eta >= 1")
        row = [marcum_q(mu_start + m, q.x, q.y, tol, max_terms)
               for m in range(n_cols)]
        for e in range(1, eta + 1):
            s0 = nuttall_q_series(MomentQuery(e, mu_start, q.x, q.y), tol, max_terms)
            s1o = None
            if n_cols >= 2:
                s1o = nuttall_q_series(MomentQuery(e, mu_start + 1.0, q.x, q.y),
                                       tol, max_terms)
            if not s0.converged or (s1o is not None and not s1o.converged):
                raise ConvergenceError("homogeneous seed series did not converge")
            row = nuttall_q_homogeneous(e, row, s0.value,
                                        s1o.value if s1o else 0.0,
                                        q.x, q.y, mu_start, n_cols)
        return row[n_cols - 1], (eta + 1) * n_cols, tol, True
    raise DomainError(f"unknown method {method!r}")


def _emit_record(args, record: dict) -> None:
    if args.format == "json":
        print(json.dumps(record, sort_keys=True))
    elif args.format == "csv":
        keys = ["eta", "mu", "x", "y", "method", "value", "est_error", "terms"]
        print(",".join(keys))
        print(",".join(_fmt(record[k]) if isinstance(record[k], float) else str(record[k])
                       for k in keys))
    else:
        for k in ("value", "method", "terms", "est_error", "converged"):
            v = record[k]
            print(f"{k} {_fmt(v) if isinstance(v, float) else v}")


def _cmd_eval(args) -> int:
    q = MomentQuery(args.eta, args.mu, args.x, args.y)
    value, terms, est, converged = _eval_one(q, args.method, args.tol,
                                             args.max_terms)
    record = {
        "eta": q.eta, "mu": q.mu, "x": q.x, "y": q.y,
        "method": args.method, "value": value, "est_error": est,
        "terms": terms, "converged": converged,
    }
    _emit_record(args, record)
    if not converged:
        print("warning: series did not converge", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    return EXIT_OK


def _table1_rows(tol: float, max_terms: int) -> list[tuple[float, ...]]:
    rows = []
    for eta, mu, x, y in TABLE1_PARAMS:
        out = nuttall_q_series(MomentQuery(eta, mu, x, y), tol, max_terms)
        if not out.converged:
            raise ConvergenceError(f"table 1 series stalled at {(eta, mu, x, y)}")
        rows.append((eta, mu, x, y, out.value))
    return rows


def _table2_rows(tol: float, max_terms: int) -> list[tuple[int, float]]:
    n_cols = max(TABLE2_NS)
    x, y = TABLE2_X, TABLE2_Y
    row = [marcum_q(1.0 + m, x, y, tol, max_terms) for m in range(n_cols)]
    for e in range(1, TABLE2_ETA + 1):
        s0 = nuttall_q_series(MomentQuery(e, 1.0, x, y), tol, max_terms)
        s1 = nuttall_q_series(MomentQuery(e, 2.0, x, y), tol, max_terms)
        row = nuttall_q_homogeneous(e, row, s0.value, s1.value, x, y, 1.0, n_cols)
    out = []
    for n in TABLE2_NS:
        series = nuttall_q_series(MomentQuery(TABLE2_ETA, float(n), x, y),
                                  tol, max_terms)
        rel = abs(1.0 - series.value / row[n - 1])
        out.append((n, rel))
    return out


def _cmd_table(args) -> int:
    if args.which == 1:
        rows = _table1_rows(args.tol, args.max_terms)
        if args.format == "json":
            print(json.dumps([
                {"eta": r[0], "mu": r[1], "x": r[2], "y": r[3], "value": r[4]}
                for r in rows]))
        else:
            print("eta,mu,x,y,value")
            for r in rows:
                print(",".join(_fmt(v) for v in r))
    else:
        rows = _table2_rows(args.tol, args.max_terms)
        if args.format == "json":
            print(json.dumps([{"N": n, "rel_error": e} for n, e in rows]))
        else:
            print("N,rel_error")
            for n, e in rows:
                print(f"{n},{_fmt(e)}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    cfg = SweepConfig(
        eta_range=_parse_range(args.eta, args.steps),
        mu_range=_parse_range(args.mu, args.steps),
        x_range=_parse_range(args.x, args.steps),
        y_range=_parse_range(args.y, args.steps),
        methods=tuple(args.methods.split(",")),
        tol=args.tol,
    )
    needs_integer_eta = any(m in ("ladder", "homogeneous") for m in cfg.methods)
    etas = _linspace(*cfg.eta_range)
    if needs_integer_eta and not all(float(e).is_integer() for e in etas):
        raise DomainError(
            "ladder/homogeneous sweeps require an integer eta grid")
    failures = 0
    print("eta,mu,x,y,method,value,est_error,terms")
    for eta in etas:
        for mu in _linspace(*cfg.mu_range):
            for x in _linspace(*cfg.x_range):
                for y in _linspace(*cfg.y_range):
                    q = MomentQuery(eta, mu, x, y)
                    for method in cfg.methods:
                        try:
                            value, terms, est, conv = _eval_one(
                                q, method, cfg.tol, args.max_terms)
                        except ConvergenceError:
                            failures += 1
                            continue
                        if not conv:
                            failures += 1
                        print(",".join((_fmt(eta), _fmt(mu), _fmt(x), _fmt(y),
                                        method, _fmt(value), _fmt(est),
                                        str(terms))))
    if failures:
        print(f"warning: {failures} evaluations did not converge",
              file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    return EXIT_OK


def _selftest_point(q: MomentQuery, tol: float, max_terms: int) -> float:
    if q.x == 0.0:
        # No ladder at x = 0: check the series against the analytic
        # reduction Gamma(eta+mu, y)/Gamma(mu) instead.
        mant, offset = _gamma_ratio_parts(q.eta, q.mu)
        closed = mant * math.exp(offset) * gamma_ratio_q(q.eta + q.mu, q.y)
        got = nuttall_q_series(q, tol, max_terms).value
        return abs(1.0 - got / closed)
    return consistency_deviation(q, tol, max_terms)


def _cmd_selftest(args) -> int:
    eta_range = _parse_range(args.eta, args.steps)
    mu_range = _parse_range(args.mu, args.steps)
    x_range = _parse_range(args.x, args.steps)
    y_range = _parse_range(args.y, args.steps)
    etas = sorted({max(1, round(e)) for e in _linspace(*eta_range)})
    worst = -1.0
    worst_at = None
    n_points = 0
    failures = 0
    for eta in etas:
        for mu in _linspace(*mu_range):
            for x in _linspace(*x_range):
                for y in _linspace(*y_range):
                    q = MomentQuery(float(eta), mu, x, y)
                    n_points += 1
                    try:
                        dev = _selftest_point(q, args.tol, args.max_terms)
                    except ConvergenceError:
                        failures += 1
                        continue
                    if dev > worst:
                        worst = dev
                        worst_at = (eta, mu, x, y)
    passed = failures == 0 and worst <= SELFTEST_THRESHOLD
    record = {
        "points": n_points,
        "convergence_failures": failures,
        "max_deviation": worst,
        "argmax": {"eta": worst_at[0], "mu": worst_at[1],
                   "x": worst_at[2], "y": worst_at[3]} if worst_at else None,
        "threshold": SELFTEST_THRESHOLD,
        "result": "PASS" if passed else "FAIL",
    }
    if args.format == "json":
        print(json.dumps(record, sort_keys=True))
    else:
        print(f"points {n_points}")
        print(f"convergence_failures {failures}")
        print(f"max_deviation {_fmt(worst)}")
        if worst_at:
            print("argmax eta={} mu={} x={} y={}".format(
                worst_at[0], _fmt(worst_at[1]), _fmt(worst_at[2]),
                _fmt(worst_at[3])))
        print(f"threshold {_fmt(SELFTEST_THRESHOLD)}")
        print(f"result {record['result']}")
    if failures:
        return EXIT_NO_CONVERGENCE
    return EXIT_OK if passed else EXIT_SELFTEST_FAIL


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="nuttallq",
        description="Moments of the partial non-central chi-squared "
                    "distribution by series, recurrences, and quadrature.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate one moment")
    p_eval.add_argument("--eta", type=float, required=True)
    p_eval.add_argument("--mu", type=float, required=True)
    p_eval.add_argument("--x", type=float, required=True)
    p_eval.add_argument("--y", type=float, required=True)
    p_eval.add_argument("--method", choices=METHODS, default="series")
    p_eval.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p_eval.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS)
    p_eval.add_argument("--format", choices=("text", "csv", "json"),
                        default="text")
    p_eval.set_defaults(func=_cmd_eval)

    p_table = sub.add_parser("table", help="emit a golden reference table")
    p_table.add_argument("which", type=int, choices=(1, 2))
    p_table.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p_table.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS)
    p_table.add_argument("--format", choices=("csv", "json"), default="csv")
    p_table.set_defaults(func=_cmd_table)

    p_sweep = sub.add_parser("sweep", help="evaluate a parameter grid")
    p_sweep.add_argument("--eta", default="1:49", help="lo[:hi[:steps]]")
    p_sweep.add_argument("--mu", default="1:50", help="lo[:hi[:steps]]")
    p_sweep.add_argument("--x", default="0.1:20", help="lo[:hi[:steps]]")
    p_sweep.add_argument("--y", default="0.1:20", help="lo[:hi[:steps]]")
    p_sweep.add_argument("--steps", type=int, default=5,
                         help="default steps per axis")
    p_sweep.add_argument("--methods", default="series",
                         help="comma-separated subset of "
                              "series,ladder,homogeneous,quadrature")
    p_sweep.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p_sweep.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_self = sub.add_parser("selftest",
                            help="recurrence-consistency scan over a region")
    p_self.add_argument("--eta", default="1:49", help="lo[:hi[:steps]]")
    p_self.add_argument("--mu", default="1:50", help="lo[:hi[:steps]]")
    p_self.add_argument("--x", default="0.1:20", help="lo[:hi[:steps]]")
    p_self.add_argument("--y", default="0.1:20", help="lo[:hi[:steps]]")
    p_self.add_argument("--steps", type=int, default=5)
    p_self.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p_self.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS)
    p_self.add_argument("--format", choices=("text", "json"), default="text")
    p_self.set_defaults(func=_cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"convergence failure: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
