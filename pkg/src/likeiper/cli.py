"""Command-line front end.

Subcommands::

    likeiper compute --family {eta,b,sigma,lambda,xi,gamma,delta} --n-max N [--routes A,B]
    likeiper verify  --n-max N
    likeiper scan    --n-max N
    likeiper report  PATH

Exit codes: 0 success / all checks pass, 1 check failure, 2 usage error,
3 precision shortfall.  ``LIKEIPER_OUT_DIR`` sets the directory used for
relative ``--out`` paths; every other setting is a flag.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass

import mpmath
from mpmath import mpf

from .precision import ConvergenceError, LikeiperError, PrecisionContext, PrecisionShortfall
from .sequences import (
    MissingInputError,
    RouteTag,
    eta_from_gamma,
    eta_from_sigma,
    lehmer_b,
    li_lambda,
    sigma,
)
from .verifier import CheckResult, build_bundle, conjecture_scan, run_suite
from .xi import xi_deriv1
from .zeta import delta, stieltjes, zeta_derivs0

__all__ = ["RunConfig", "main", "format_value", "report_to_json", "report_from_json"]

FAMILIES = ("eta", "b", "sigma", "lambda", "xi", "gamma", "delta")
COMMANDS = ("compute", "verify", "scan", "report")
OUT_DIR_ENV = "LIKEIPER_OUT_DIR"
REPORT_DIGITS = 25

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SHORTFALL = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    n_max: int = 8
    family: str | None = None
    precision_bits: int | None = None
    routes: tuple = ("A",)
    output_format: str = "csv"
    output_path: str | None = None
    report_path: str | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.n_max < 1:
            raise UsageError("--n-max must be >= 1")
        if self.precision_bits is not None and self.precision_bits < 64:
            raise UsageError("--precision-bits must be >= 64")
        if self.command == "compute" and self.family not in FAMILIES:
            raise UsageError(f"--family must be one of {', '.join(FAMILIES)}")
        if not self.routes:
            raise UsageError("--routes must name at least one route")
        for r in self.routes:
            if r not in "ABCD" or len(r) != 1:
                raise UsageError(f"unknown route {r!r}; use letters A-D")

    def context(self) -> PrecisionContext:
        if self.precision_bits is not None:
            return PrecisionContext(self.precision_bits)
        return PrecisionContext.for_range(self.n_max)

    def as_dict(self) -> dict:
        ctx = self.context()
        return {
            "command": self.command,
            "family": self.family,
            "n_max": self.n_max,
            "precision_bits": ctx.work_bits,
            "routes": list(self.routes),
            "format": self.output_format,
        }


# -- formatting -----------------------------------------------------------------

def format_value(value, err=None, digits: int | None = None) -> str:
    """Scientific notation with as many significant digits as ``err`` justifies, plus two.

    The digit count is ceil(log10(|value|/err)) + 2, at least 3; with no
    error estimate ``digits`` (default 25) is used.

    >>> format_value(mpf(1) / 3, mpf("1e-10"))
    '3.33333333333e-1'
    """
    if isinstance(value, mpf):
        v = value  # keep the full working precision; mpf(...) would round to mp.prec
    else:
        with mpmath.workprec(256):
            v = mpf(value) if not hasattr(value, "numerator") else mpf(value.numerator) / value.denominator
    if digits is None:
        if err is None or mpf(err) <= 0:
            digits = REPORT_DIGITS
        elif v == 0:
            digits = 3
        else:
            digits = max(3, int(math.ceil(float(mpmath.log10(abs(v) / mpf(err))))) + 2)
    digits = min(digits, 2000)
    s = mpmath.nstr(v, digits, min_fixed=1, max_fixed=0, strip_zeros=False)
    mant, _, exp = s.partition("e")
    return f"{mant}e{int(exp) if exp else 0}"


def _num(x):
    if isinstance(x, (str, bool)) or x is None:
        return x
    if isinstance(x, (list, tuple)):
        return [_num(v) for v in x]
    return format_value(x, digits=REPORT_DIGITS)


def check_to_dict(r: CheckResult) -> dict:
    return {
        "check_id": r.check_id,
        "kind": r.kind,
        "lhs": _num(r.lhs),
        "rhs": _num(r.rhs),
        "residual": _num(r.residual),
        "tolerance": _num(r.tolerance),
        "passed": bool(r.passed),
        "notes": r.notes,
    }


def report_to_json(cfg: RunConfig, results) -> str:
    passed = sum(1 for r in results if r.passed)
    doc = {
        "config": cfg.as_dict(),
        "results": [check_to_dict(r) for r in results],
        "summary": {"passed": passed, "failed": len(results) - passed},
    }
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def report_from_json(text: str) -> dict:
    """Parse a report; the summary is re-derived from the results as a consistency check."""
    doc = json.loads(text)
    for key in ("config", "results", "summary"):
        if key not in doc:
            raise ValueError(f"report lacks {key!r}")
    passed = sum(1 for r in doc["results"] if r["passed"])
    if passed != doc["summary"]["passed"] or len(doc["results"]) - passed != doc["summary"]["failed"]:
        raise ValueError("report summary does not match its results")
    return doc


# -- compute --------------------------------------------------------------------

def _rows_from_seq(seq, route):
    return [(n, seq.at(n), seq.err_at(n), route) for n in seq.indices]


def _etas(n, ctx):
    """eta_0..eta_{n-1} by the Lehmer/sigma route."""
    if n == 1:
        return eta_from_gamma(1, stieltjes(1, ctx), ctx)
    s = sigma(n, lehmer_b(n - 1, zeta_derivs0(n, ctx), ctx), ctx)
    return eta_from_sigma(n, s, ctx)


def compute_rows(cfg: RunConfig):
    """Rows (index, value, err_est, route) for the configured family.

    Index ranges: eta 0..n_max-1, b/gamma/delta 0..n_max, sigma/xi/lambda 1..n_max.
    For lambda with several routes the rows are (index, {route: (value, err)}).
    """
    ctx = cfg.context()
    n = cfg.n_max
    fam = cfg.family
    if fam == "gamma":
        g = stieltjes(n, ctx)
        return [(k, g.values[k], g.err_est[k], g.method) for k in range(n + 1)]
    if fam == "delta":
        d = delta(n, ctx)
        return [(k, d.values[k], d.err_est[k], d.route) for k in range(n + 1)]
    if fam == "xi":
        x = xi_deriv1(n, ctx)
        return [(k, x.xi1[k], x.err_est[k], "alpha_beta") for k in range(1, n + 1)]
    if fam == "b":
        b = lehmer_b(n, zeta_derivs0(n + 1, ctx), ctx)
        return _rows_from_seq(b, b.route.value)
    if fam == "sigma":
        s = sigma(n, lehmer_b(n - 1, zeta_derivs0(n, ctx), ctx), ctx)
        return _rows_from_seq(s, s.route.value)
    if fam == "eta":
        e = _etas(n, ctx)
        return _rows_from_seq(e, e.route.value)
    # lambda
    need = set(cfg.routes)
    kw = {}
    if need & {"A", "B"}:
        zd0 = zeta_derivs0(n + 1, ctx)
        kw["bs"] = lehmer_b(n, zd0, ctx)
        if "A" in need:
            kw["sigmas"] = sigma(n, kw["bs"], ctx)
    if "C" in need:
        kw["etas"] = eta_from_gamma(n, stieltjes(n, ctx), ctx)
    if "D" in need:
        kw["xi"] = xi_deriv1(n, ctx)
    seqs = {r: li_lambda(n, r, ctx=ctx, **kw) for r in cfg.routes}
    if len(seqs) == 1:
        (r, seq), = seqs.items()
        return _rows_from_seq(seq, seq.route.value)
    return [(k, {r: (s.at(k), s.err_at(k)) for r, s in seqs.items()}) for k in range(1, n + 1)]


def render_rows(cfg: RunConfig, rows) -> str:
    multi = rows and isinstance(rows[0][1], dict)
    if cfg.output_format == "json":
        if multi:
            items = []
            for k, per in rows:
                vals = [v for v, _ in per.values()]
                items.append({"index": k,
                              "routes": {r: {"value": format_value(v, e), "err_est": format_value(e, digits=3)}
                                         for r, (v, e) in per.items()},
                              "max_discrepancy": format_value(max(vals) - min(vals), digits=3)})
        else:
            items = [{"index": k, "value": format_value(v, e), "err_est": format_value(e, digits=3), "route": r}
                     for k, v, e, r in rows]
        return json.dumps({"config": cfg.as_dict(), "rows": items}, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if multi:
        routes = list(rows[0][1])
        header = ["index"]
        for r in routes:
            header += [f"value_{r}", f"err_est_{r}"]
        w.writerow(header + ["max_discrepancy"])
        for k, per in rows:
            line = [k]
            for r in routes:
                v, e = per[r]
                line += [format_value(v, e), format_value(e, digits=3)]
            vals = [v for v, _ in per.values()]
            w.writerow(line + [format_value(max(vals) - min(vals), digits=3)])
    else:
        w.writerow(["index", "value", "err_est", "route"])
        for k, v, e, r in rows:
            w.writerow([k, format_value(v, e), format_value(e, digits=3), r])
    return buf.getvalue()


# -- scan -----------------------------------------------------------------------

def scan_to_json(cfg: RunConfig, scan) -> str:
    doc = {
        "config": cfg.as_dict(),
        "ratio": [{"k": k, "ratio": _num(r), "refined_ratio": _num(q)}
                  for k, r, q in zip(scan.k_range, scan.ratio, scan.refined_ratio)],
        "best_alpha": _num(scan.best_alpha),
        "best_alpha_from_k2": _num(scan.best_alpha_from_2),
        "violations": list(scan.violations),
        "smallest_clean_N": scan.smallest_clean_N,
        "has_clean_tail": scan.has_clean_tail,
        "trend_constant": _num(scan.trend_constant),
        "bound_values": {a: [_num(v) for v in vals] for a, vals in scan.bound_values.items()},
        "bound_positive_at_best_alpha": list(scan.bound_positive_at_best),
    }
    return json.dumps(doc, indent=2) + "\n"


def scan_to_csv(scan) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "ratio", "refined_ratio", "violation"])
    viol = set(scan.violations)
    for k, r, q in zip(scan.k_range, scan.ratio, scan.refined_ratio):
        w.writerow([k, format_value(r, digits=12), format_value(q, digits=12), int(k in viol)])
    return buf.getvalue()


# -- plumbing -------------------------------------------------------------------

def _emit(text: str, cfg: RunConfig):
    path = cfg.output_path
    if path is None:
        sys.stdout.write(text)
        return
    base = os.environ.get(OUT_DIR_ENV)
    if base and not os.path.isabs(path):
        path = os.path.join(base, path)
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="likeiper", description="Li/Keiper constants and related sequences.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt_default):
        sp.add_argument("--n-max", type=int, default=8)
        sp.add_argument("--precision-bits", type=int, default=None)
        sp.add_argument("--routes", default="A")
        sp.add_argument("--format", choices=("csv", "json"), default=fmt_default)
        sp.add_argument("--out", default=None)

    c = sub.add_parser("compute", help="tabulate one family")
    c.add_argument("--family", required=True, choices=FAMILIES)
    common(c, "csv")
    common(sub.add_parser("verify", help="run the identity, inequality and sign suite"), "json")
    common(sub.add_parser("scan", help="eta conjecture scan"), "json")
    r = sub.add_parser("report", help="summarize a saved verify report")
    r.add_argument("path")
    r.add_argument("--format", choices=("csv", "json"), default="csv")
    r.add_argument("--out", default=None)
    return p


def _config(ns) -> RunConfig:
    if ns.command == "report":
        return RunConfig("report", output_format=ns.format, output_path=ns.out, report_path=ns.path)
    routes = tuple(s.strip().upper() for s in ns.routes.split(",") if s.strip())
    return RunConfig(ns.command, n_max=ns.n_max, family=getattr(ns, "family", None),
                     precision_bits=ns.precision_bits, routes=routes,
                     output_format=ns.format, output_path=ns.out)


def run(cfg: RunConfig) -> int:
    if cfg.command == "compute":
        _emit(render_rows(cfg, compute_rows(cfg)), cfg)
        return EXIT_OK
    if cfg.command == "verify":
        ctx = cfg.context()
        results = run_suite(cfg.n_max, ctx, build_bundle(cfg.n_max, ctx))
        failed = [r.check_id for r in results if not r.passed]
        if cfg.output_format == "json":
            _emit(report_to_json(cfg, results), cfg)
        else:
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["check_id", "kind", "residual", "tolerance", "passed"])
            for r in results:
                w.writerow([r.check_id, r.kind, _num(r.residual), _num(r.tolerance), int(r.passed)])
            _emit(buf.getvalue(), cfg)
        if failed:
            print("failed checks: " + ", ".join(failed), file=sys.stderr)
            return EXIT_FAIL
        return EXIT_OK
    if cfg.command == "scan":
        ctx = cfg.context()
        scan = conjecture_scan(_etas(max(cfg.n_max, 2), ctx), ctx=ctx)
        _emit(scan_to_json(cfg, scan) if cfg.output_format == "json" else scan_to_csv(scan), cfg)
        return EXIT_OK
    # report
    try:
        with open(cfg.report_path, encoding="utf-8") as fh:
            doc = report_from_json(fh.read())
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot read report {cfg.report_path}: {exc}") from exc
    failed = [r["check_id"] for r in doc["results"] if not r["passed"]]
    if cfg.output_format == "json":
        text = json.dumps({"summary": doc["summary"], "failed": failed}, indent=2) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["check_id", "kind", "residual", "tolerance", "passed"])
        for r in doc["results"]:
            w.writerow([r["check_id"], r["kind"], r["residual"], r["tolerance"], int(r["passed"])])
        text = buf.getvalue()
    _emit(text, cfg)
    return EXIT_FAIL if failed else EXIT_OK


def main(argv=None) -> int:
    try:
        ns = _parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return run(_config(ns))
    except UsageError as exc:
        print(f"likeiper: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionShortfall as exc:
        print(f"likeiper: precision shortfall: {exc}", file=sys.stderr)
        return EXIT_SHORTFALL
    except (MissingInputError, ConvergenceError, LikeiperError) as exc:
        print(f"likeiper: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
