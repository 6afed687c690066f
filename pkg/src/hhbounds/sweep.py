"""Parameter sweeps over (statement, f, h, interval, x, exponent) tuples.

Rows are enumerated deterministically, evaluated (optionally across a
thread pool), and emitted in input order regardless of completion order.
Rows that cannot be evaluated (kernel with divergent moments, function
outside its domain, unmet hard hypothesis) are recorded as skipped, never
as failures.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from . import bounds
from .bounds import BoundReport, STATEMENT_META
from .errors import DivergentKernel, DomainViolation, HypothesisFailed
from .funcat import Interval, parse_function
from .hkernel import parse_kernel
from .quadrature import DEFAULT_TOL
from .serialize import csv_header, csv_row, fmt_float, to_json

DEFAULT_FUNCTIONS = ("poly:2", "poly:4", "exp", "recip")
DEFAULT_KERNELS = ("id", "power:0.25", "power:0.5", "power:0.75", "one")
DEFAULT_INTERVALS = ((0.0, 1.0), (1.0, 2.0), (-1.0, 1.0))
DEFAULT_STATEMENTS = (
    "th1_eq21",
    "cor1",
    "cor2",
    "th2_eq22",
    "rem_xa",
    "rem_xb",
    "rem_xmid",
    "rem_fprime0",
    "cor6",
    "th3",
    "cor7",
    "cor8",
)
DEFAULT_EXPONENTS = (1.5, 2.0, 3.0)
DEFAULT_X_GRID = 11

STATUS_OK = "ok"
SKIP_DOMAIN = "skipped:domain-violation"
SKIP_DIVERGENT = "skipped:divergent-moments"
SKIP_HYPOTHESIS = "skipped:hypothesis-not-met"


@dataclass(frozen=True)
class SweepConfig:
    functions: tuple = DEFAULT_FUNCTIONS
    kernels: tuple = DEFAULT_KERNELS
    intervals: tuple = DEFAULT_INTERVALS
    x_grid: int = DEFAULT_X_GRID
    exponents: tuple = DEFAULT_EXPONENTS
    statements: tuple = DEFAULT_STATEMENTS
    out_format: str = "csv"
    tol: float = DEFAULT_TOL
    jobs: int = 1
    hyp_grid: int = bounds.HYP_GRID

    def __post_init__(self):
        for name in ("functions", "kernels", "intervals", "statements"):
            if not getattr(self, name):
                raise DomainViolation(f"sweep config needs a non-empty {name} list")
        if self.x_grid < 1:
            raise DomainViolation("x_grid must be at least 1")
        if any(not e > 1 for e in self.exponents):
            raise DomainViolation("sweep exponents must all be > 1")
        if not self.tol > 0:
            raise DomainViolation("tol must be positive")
        if self.out_format not in ("csv", "json"):
            raise DomainViolation(f"unknown output format {self.out_format!r}")
        if self.jobs < 1:
            raise DomainViolation("jobs must be at least 1")


@dataclass(frozen=True)
class RowSpec:
    statement: str
    f_spec: str
    a: float
    b: float
    h_spec: Optional[str]
    x: Optional[float]
    exponent: Optional[float]


@dataclass(frozen=True)
class RowOutcome:
    spec: RowSpec
    status: str
    report: Optional[BoundReport] = None

    @property
    def evaluated(self) -> bool:
        return self.status == STATUS_OK


@dataclass
class SweepResult:
    rows: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        if self.summary.get("failed", 0) > 0:
            return 1
        if self.summary.get("hypothesis_failures", 0) > 0:
            return 2
        return 0


def _x_points(a: float, b: float, count: int):
    if count == 1:
        return [0.5 * (a + b)]
    step = (b - a) / (count - 1)
    return [a + i * step for i in range(count)]


def enumerate_rows(cfg: SweepConfig) -> list:
    """Deterministic row order: statement, function, interval, kernel,
    exponent, x."""
    rows = []
    for statement in cfg.statements:
        sid = bounds.canonical_statement(statement)
        meta = STATEMENT_META[sid]
        kernels = list(cfg.kernels) if meta.kernel in ("any", "power") else [None]
        exponents = list(cfg.exponents) if meta.exponent else [None]
        for f_spec in cfg.functions:
            for a, b in cfg.intervals:
                xs = _x_points(a, b, cfg.x_grid) if meta.x == "free" else [None]
                for h_spec in kernels:
                    for exponent in exponents:
                        for x in xs:
                            rows.append(
                                RowSpec(sid, f_spec, float(a), float(b), h_spec, x, exponent)
                            )
    return rows


def _evaluate_row(spec: RowSpec, cfg: SweepConfig) -> RowOutcome:
    try:
        f = parse_function(spec.f_spec, spec.a, spec.b)
    except DomainViolation:
        return RowOutcome(spec, SKIP_DOMAIN)
    h = parse_kernel(spec.h_spec) if spec.h_spec is not None else None
    iv = Interval(spec.a, spec.b, spec.x)
    try:
        report = bounds.evaluate(
            spec.statement,
            f,
            iv,
            h=h,
            exponent=spec.exponent,
            tol=cfg.tol,
            hyp_grid=cfg.hyp_grid,
        )
    except DivergentKernel:
        return RowOutcome(spec, SKIP_DIVERGENT)
    except HypothesisFailed:
        return RowOutcome(spec, SKIP_HYPOTHESIS)
    except DomainViolation:
        return RowOutcome(spec, SKIP_DOMAIN)
    return RowOutcome(spec, STATUS_OK, report)


def run_sweep(cfg: SweepConfig) -> SweepResult:
    specs = enumerate_rows(cfg)
    if cfg.jobs > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            outcomes = list(pool.map(lambda s: _evaluate_row(s, cfg), specs))
    else:
        outcomes = [_evaluate_row(s, cfg) for s in specs]

    held = failed = skipped = hyp_failures = 0
    min_gap = None
    argmin = None
    for out in outcomes:
        if not out.evaluated:
            skipped += 1
            continue
        r = out.report
        if r.holds:
            held += 1
        else:
            failed += 1
        if not r.hypotheses_ok:
            hyp_failures += 1
        if min_gap is None or r.gap < min_gap:
            min_gap = r.gap
            argmin = {
                "statement_id": r.statement_id,
                "f": out.spec.f_spec,
                "h": out.spec.h_spec or "",
                "a": out.spec.a,
                "b": out.spec.b,
                "x": r.inputs.get("x"),
                "exponent": out.spec.exponent,
            }
    summary = {
        "total": len(outcomes),
        "evaluated": held + failed,
        "held": held,
        "failed": failed,
        "skipped": skipped,
        "hypothesis_failures": hyp_failures,
        "min_gap": min_gap,
        "argmin": argmin,
    }
    return SweepResult(rows=outcomes, summary=summary)


def outcome_cells(out: RowOutcome) -> dict:
    cells = {
        "statement_id": out.spec.statement,
        "f": out.spec.f_spec,
        "h": out.spec.h_spec or "",
        "a": out.spec.a,
        "b": out.spec.b,
        "status": out.status,
    }
    if out.report is not None:
        r = out.report
        cells.update(
            x=r.inputs.get("x"),
            exponent=r.inputs.get("exponent"),
            lhs=r.lhs,
            rhs=r.rhs,
            gap=r.gap,
            holds=r.holds,
            hyp_ok=r.hypotheses_ok,
            quad_err=r.quadrature_error,
        )
        cells["h"] = r.inputs.get("h", cells["h"])
    else:
        cells.update(x=out.spec.x, exponent=out.spec.exponent)
    return cells


def render_csv(result: SweepResult) -> str:
    lines = [csv_header()]
    lines.extend(csv_row(outcome_cells(out)) for out in result.rows)
    s = result.summary
    lines.append(
        "# summary: total={total} evaluated={evaluated} held={held} failed={failed} "
        "skipped={skipped} hypothesis_failures={hypothesis_failures}".format(**s)
    )
    if s["min_gap"] is not None:
        lines.append(f"# min_gap: {fmt_float(s['min_gap'])}")
        lines.append(f"# argmin: {to_json(s['argmin'])}")
    return "\n".join(lines) + "\n"


def render_json(result: SweepResult) -> str:
    from .serialize import report_to_dict

    rows = []
    for out in result.rows:
        d = {"status": out.status, "spec": outcome_cells(out)}
        if out.report is not None:
            d["report"] = report_to_dict(out.report)
        rows.append(d)
    return to_json({"rows": rows, "summary": result.summary}) + "\n"


def parse_config_file(path: str) -> dict:
    """Read a key=value config file; '#' starts a comment, blanks ignored.

    Recognized keys: functions, kernels, statements (comma lists),
    intervals (comma list of a:b pairs), exponents (comma list of reals),
    x_grid, jobs (ints), tol (real), format (csv|json).
    """
    overrides = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainViolation(f"{path}:{lineno}: expected key=value, got {raw!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if key in ("functions", "kernels", "statements"):
                overrides[key] = tuple(v.strip() for v in value.split(",") if v.strip())
            elif key == "intervals":
                pairs = []
                for chunk in value.split(","):
                    chunk = chunk.strip()
                    if not chunk:
                        continue
                    try:
                        a, b = (float(v) for v in chunk.split(":"))
                    except ValueError:
                        raise DomainViolation(
                            f"{path}:{lineno}: bad interval {chunk!r}, expected a:b"
                        ) from None
                    pairs.append((a, b))
                overrides[key] = tuple(pairs)
            elif key == "exponents":
                try:
                    overrides[key] = tuple(float(v) for v in value.split(",") if v.strip())
                except ValueError:
                    raise DomainViolation(f"{path}:{lineno}: bad exponent list {value!r}") from None
            elif key in ("x_grid", "jobs"):
                try:
                    overrides[key] = int(value)
                except ValueError:
                    raise DomainViolation(f"{path}:{lineno}: {key} must be an integer") from None
            elif key == "tol":
                try:
                    overrides[key] = float(value)
                except ValueError:
                    raise DomainViolation(f"{path}:{lineno}: tol must be a real") from None
            elif key == "format":
                overrides["out_format"] = value
            else:
                raise DomainViolation(f"{path}:{lineno}: unknown config key {key!r}")
    return overrides
