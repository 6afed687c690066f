"""Command-line front end.

Commands: verify, sweep, classify, means, prop, moments, report.

Exit codes: 0 success (bound holds, hypotheses pass), 1 a bound failed,
2 a bound holds but a hypothesis check failed, 64 usage or input errors.
The HHB_TOL environment variable overrides the default tolerance; an
explicit --tol flag beats the environment.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import bounds, classes, means, sweep as sweep_mod
from .errors import HHBoundsError
from .funcat import parse_function
from .hkernel import moments, parse_kernel
from .quadrature import DEFAULT_TOL
from .serialize import report_to_json, to_json

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_HYP = 2
EXIT_USAGE = 64


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _resolve_tol(args) -> float:
    if getattr(args, "tol", None) is not None:
        return args.tol
    env = os.environ.get("HHB_TOL")
    if env:
        try:
            tol = float(env)
        except ValueError:
            raise _UsageError(f"HHB_TOL is not a real number: {env!r}") from None
        if not tol > 0:
            raise _UsageError(f"HHB_TOL must be positive, got {env!r}")
        return tol
    return DEFAULT_TOL


def _common_flags(p: argparse.ArgumentParser):
    p.add_argument("--tol", type=float, default=None, help="quadrature tolerance (default 1e-10; env HHB_TOL)")
    p.add_argument("--jobs", type=int, default=1, help="worker threads for sweeps")
    p.add_argument("--format", choices=("json", "csv"), default=None, help="output format")


def _interval_flags(p: argparse.ArgumentParser, with_x=True):
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    if with_x:
        p.add_argument("--x", type=float, default=None, help="interior evaluation point")


def build_parser() -> _Parser:
    parser = _Parser(prog="hhb", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("verify", help="evaluate one statement and certify it")
    p.add_argument("--statement", required=True, help="statement id (th1, cor1, ..., p301..p305)")
    p.add_argument("--f", dest="fspec", default=None, help="function spec: poly:n, recip, exp, affine:c0,c1")
    p.add_argument("--h", dest="hspec", default=None, help="kernel spec: id, power:s, one, godunova, powk:k")
    _interval_flags(p)
    p.add_argument("--p", type=float, default=None, help="Holder exponent p > 1")
    p.add_argument("--q", type=float, default=None, help="power-mean exponent q > 1")
    p.add_argument("--s", type=float, default=None, help="s for the s-convex background bound")
    p.add_argument("--n", type=int, default=None, help="integer power for the mean inequalities")
    p.add_argument("--printed-cor6", action="store_true", help="use the compact cor6 variant")
    p.add_argument("--half-factor-th3", action="store_true", help="use the (1/2)^(1-1/q) leading factor")
    _common_flags(p)

    p = sub.add_parser("sweep", help="evaluate a grid of statements")
    p.add_argument("--config", default=None, help="key=value config file")
    p.add_argument("--functions", default=None, help="comma list of function specs")
    p.add_argument("--kernels", default=None, help="comma list of kernel specs")
    p.add_argument("--intervals", default=None, help="comma list of a:b pairs")
    p.add_argument("--statements", default=None, help="comma list of statement ids")
    p.add_argument("--exponents", default=None, help="comma list of exponents > 1")
    p.add_argument("--x-grid", type=int, default=None, help="points of the x grid")
    p.add_argument("--out", default=None, help="write to this file instead of stdout")
    _common_flags(p)

    p = sub.add_parser("classify", help="class membership check on a grid")
    p.add_argument("--f", dest="fspec", required=True)
    p.add_argument("--class", dest="class_name", required=True, help="convex, godunova_levin, p_class, s_convex, h_convex, h_concave")
    p.add_argument("--h", dest="hspec", default=None)
    p.add_argument("--s", type=float, default=None)
    p.add_argument("--grid", type=int, default=classes.DEFAULT_GRID)
    _interval_flags(p, with_x=False)
    _common_flags(p)

    p = sub.add_parser("means", help="print the special means of (a, b)")
    _interval_flags(p, with_x=False)
    p.add_argument("--p", type=float, default=None, help="exponent for the p-logarithmic mean")
    _common_flags(p)

    p = sub.add_parser("prop", help="evaluate a closed-form mean inequality")
    p.add_argument("--id", dest="prop_id", required=True, choices=means.PROP_IDS)
    _interval_flags(p, with_x=False)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--q", type=float, default=None)
    _common_flags(p)

    p = sub.add_parser("moments", help="print the four moment integrals of a kernel")
    p.add_argument("--h", dest="hspec", required=True)
    _common_flags(p)

    p = sub.add_parser("report", help="run a sweep and render CSV + figures to a directory")
    p.add_argument("--outdir", required=True)
    p.add_argument("--config", default=None)
    p.add_argument("--functions", default=None)
    p.add_argument("--kernels", default=None)
    p.add_argument("--intervals", default=None)
    p.add_argument("--statements", default=None)
    p.add_argument("--exponents", default=None)
    p.add_argument("--x-grid", type=int, default=None)
    _common_flags(p)

    return parser


def _report_exit(report) -> int:
    if not report.holds:
        return EXIT_FAILED
    if not report.hypotheses_ok:
        return EXIT_HYP
    return EXIT_OK


def _cmd_verify(args) -> int:
    tol = _resolve_tol(args)
    sid = args.statement.strip().lower()
    if sid in means.PROP_IDS:
        report = means.prop_bound(sid, args.a, args.b, n=args.n, q=args.q)
        print(report_to_json(report))
        return _report_exit(report)

    sid = bounds.canonical_statement(sid)
    meta = bounds.STATEMENT_META[sid]
    if args.fspec is None:
        raise _UsageError(f"statement {sid} needs --f")
    x = args.x
    if meta.x == "free" and x is None:
        raise _UsageError(f"statement {sid} needs --x")
    f = parse_function(args.fspec, args.a, args.b, x)
    h = parse_kernel(args.hspec) if args.hspec else None
    exponent = None
    if meta.exponent == "p":
        exponent = args.p
    elif meta.exponent == "q":
        exponent = args.q
    iv = f.domain
    report = bounds.evaluate(
        sid,
        f,
        iv,
        h=h,
        exponent=exponent,
        s=args.s,
        tol=tol,
        use_printed_cor6=args.printed_cor6,
        use_half_factor_th3=args.half_factor_th3,
    )
    print(report_to_json(report))
    return _report_exit(report)


def _build_sweep_config(args) -> sweep_mod.SweepConfig:
    overrides = {}
    if args.config:
        overrides.update(sweep_mod.parse_config_file(args.config))
    if args.functions:
        overrides["functions"] = tuple(v.strip() for v in args.functions.split(",") if v.strip())
    if args.kernels:
        overrides["kernels"] = tuple(v.strip() for v in args.kernels.split(",") if v.strip())
    if args.statements:
        overrides["statements"] = tuple(v.strip() for v in args.statements.split(",") if v.strip())
    if args.exponents:
        try:
            overrides["exponents"] = tuple(float(v) for v in args.exponents.split(",") if v.strip())
        except ValueError:
            raise _UsageError(f"bad exponent list {args.exponents!r}") from None
    if args.intervals:
        pairs = []
        for chunk in args.intervals.split(","):
            chunk = chunk.strip()
            if not chunk:
                continue
            try:
                a, b = (float(v) for v in chunk.split(":"))
            except ValueError:
                raise _UsageError(f"bad interval {chunk!r}, expected a:b") from None
            pairs.append((a, b))
        overrides["intervals"] = tuple(pairs)
    if args.x_grid is not None:
        overrides["x_grid"] = args.x_grid
    if args.format is not None:
        overrides["out_format"] = args.format
    overrides["tol"] = _resolve_tol(args)
    overrides["jobs"] = args.jobs
    return sweep_mod.SweepConfig(**overrides)


def _cmd_sweep(args) -> int:
    cfg = _build_sweep_config(args)
    result = sweep_mod.run_sweep(cfg)
    text = sweep_mod.render_csv(result) if cfg.out_format == "csv" else sweep_mod.render_json(result)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return result.exit_code


def _cmd_classify(args) -> int:
    f = parse_function(args.fspec, args.a, args.b)
    h = parse_kernel(args.hspec) if args.hspec else None
    verdict = classes.test_membership(f, args.class_name, h=h, s=args.s, grid=args.grid)
    print(
        to_json(
            {
                "class_name": verdict.class_name,
                "holds": verdict.holds,
                "witness": list(verdict.witness) if verdict.witness else None,
                "resolution": list(verdict.resolution),
                "max_violation": verdict.max_violation,
                "f": f.label,
                "h": h.label if h else "",
            }
        )
    )
    return EXIT_OK if verdict.holds else EXIT_FAILED


def _cmd_means(args) -> int:
    out = {
        "A": means.mean("A", args.a, args.b),
        "G": means.mean("G", args.a, args.b),
        "K": means.mean("K", args.a, args.b),
        "L": means.mean("L", args.a, args.b),
    }
    if args.p is not None:
        out["L_p"] = means.mean("L_p", args.a, args.b, p=args.p)
        out["p"] = args.p
    print(to_json(out))
    return EXIT_OK


def _cmd_prop(args) -> int:
    report = means.prop_bound(args.prop_id, args.a, args.b, n=args.n, q=args.q)
    print(report_to_json(report))
    return _report_exit(report)


def _cmd_moments(args) -> int:
    tol = _resolve_tol(args)
    h = parse_kernel(args.hspec)
    ms = moments(h, tol)
    payload = {"h": h.label, "tol": tol, "divergent": not ms.all_converged}
    for name, res in ms.as_dict().items():
        payload[name] = {
            "value": res.value if res.converged else None,
            "abs_error_estimate": res.abs_error_estimate if res.converged else None,
            "converged": res.converged,
            "evaluations": res.evaluations,
        }
    print(to_json(payload))
    return EXIT_OK


def _cmd_report(args) -> int:
    from .report import write_report

    cfg = _build_sweep_config(args)
    result = sweep_mod.run_sweep(cfg)
    created = write_report(result, Path(args.outdir))
    for path in created:
        print(f"wrote {path}")
    return result.exit_code


_COMMANDS = {
    "verify": _cmd_verify,
    "sweep": _cmd_sweep,
    "classify": _cmd_classify,
    "means": _cmd_means,
    "prop": _cmd_prop,
    "moments": _cmd_moments,
    "report": _cmd_report,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise _UsageError("a command is required")
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except HHBoundsError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
