"""Bound evaluators producing a BoundReport per inequality statement.

Each evaluator computes the trapezoid-type left side

    | ((b-x) f(b) + (x-a) f(a)) / (b-a)  -  (1/(b-a)) * integral(f, a, b) |

and the statement's right side from the kernel moments and |f'| at the
relevant points, then certifies rhs - lhs >= -CERTIFY_TOL.  Hypothesis
checks (kernel-convexity of |f'| powers, supermultiplicativity, domination
of the identity) are recorded in the report, not gating: a report is
produced even when a hypothesis fails, so callers can observe how a bound
behaves outside its hypotheses.  The one exception is the specialization
that requires f'((a+b)/2) = 0, which raises when the premise is absent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from . import classes
from .errors import (
    BadExponent,
    DivergentKernel,
    DomainViolation,
    HypothesisFailed,
)
from .funcat import AbsDerivPower, FunctionSpec, Interval
from .hkernel import (
    HKernel,
    IDENTITY,
    MomentSet,
    ONE,
    check_dominates_identity,
    check_supermultiplicative,
    moments,
)
from .quadrature import DEFAULT_TOL, integrate

CERTIFY_TOL = 1e-9
HYP_GRID = classes.DEFAULT_GRID
FPRIME_ZERO_TOL = 1e-9

STATEMENT_IDS = (
    "lemma110",
    "eq109",
    "eq111",
    "eq112",
    "th1_eq21",
    "cor1",
    "cor2",
    "cor3",
    "th2_eq22",
    "cor4",
    "cor5",
    "cor6",
    "rem_xa",
    "rem_xb",
    "rem_xmid",
    "rem_fprime0",
    "th3",
    "cor7",
    "rem_th3_ht",
    "cor8",
)

ALIASES = {"th1": "th1_eq21", "th2": "th2_eq22", "lemma": "lemma110"}


@dataclass(frozen=True)
class StatementMeta:
    """What a statement needs: kernel policy, x policy, exponent kind."""

    kernel: str      # "any" | "none" | "id" | "one" | "power"
    x: str           # "free" | "mid" | "a" | "b"
    exponent: Optional[str]  # None | "p" | "q"
    needs_s: bool = False


STATEMENT_META = {
    "lemma110": StatementMeta("none", "free", None),
    "eq109": StatementMeta("none", "mid", None),
    "eq111": StatementMeta("none", "free", "p"),
    "eq112": StatementMeta("none", "free", "p", needs_s=True),
    "th1_eq21": StatementMeta("any", "free", None),
    "cor1": StatementMeta("any", "mid", None),
    "cor2": StatementMeta("any", "mid", None),
    "cor3": StatementMeta("id", "mid", None),
    "th2_eq22": StatementMeta("any", "free", "p"),
    "cor4": StatementMeta("id", "free", "p"),
    "cor5": StatementMeta("power", "free", "p"),
    "cor6": StatementMeta("one", "free", "p"),
    "rem_xa": StatementMeta("any", "a", "p"),
    "rem_xb": StatementMeta("any", "b", "p"),
    "rem_xmid": StatementMeta("any", "mid", "p"),
    "rem_fprime0": StatementMeta("any", "mid", "p"),
    "th3": StatementMeta("any", "free", "q"),
    "cor7": StatementMeta("any", "mid", "q"),
    "rem_th3_ht": StatementMeta("id", "mid", "q"),
    "cor8": StatementMeta("one", "mid", "q"),
}


def canonical_statement(name: str) -> str:
    key = name.strip().lower()
    key = ALIASES.get(key, key)
    if key not in STATEMENT_META:
        raise DomainViolation(f"unknown statement {name!r}")
    return key


@dataclass(frozen=True)
class BoundReport:
    """One evaluated inequality: both sides, the gap, and the hypothesis trail."""

    statement_id: str
    inputs: dict
    lhs: float
    rhs: float
    gap: float
    holds: bool
    hypothesis_checks: dict
    quadrature_error: float
    note: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def hypotheses_ok(self) -> bool:
        return all(self.hypothesis_checks.values())


def _make_report(statement_id, inputs, lhs, rhs, hyp, quad_err, note="", extra=None):
    gap = rhs - lhs
    holds = gap >= -CERTIFY_TOL
    if holds and gap < 0 and not note:
        note = "gap within roundoff band [-certify_tol, 0)"
    return BoundReport(
        statement_id=statement_id,
        inputs=inputs,
        lhs=lhs,
        rhs=rhs,
        gap=gap,
        holds=holds,
        hypothesis_checks=dict(hyp),
        quadrature_error=quad_err,
        note=note,
        extra=dict(extra) if extra else {},
    )


def _inputs(f, iv, x, h=None, exponent_name=None, exponent=None, s=None, tol=DEFAULT_TOL):
    d = {
        "f": f.label,
        "h": h.label if h is not None else "",
        "a": iv.a,
        "b": iv.b,
        "x": x,
        "exponent": exponent,
        "tol": tol,
    }
    if exponent_name:
        d["exponent_kind"] = exponent_name
    if s is not None:
        d["s"] = s
    return d


def _check_iv(f: FunctionSpec, iv: Interval):
    s = 1e-12 * (abs(iv.a) + abs(iv.b) + 1.0)
    if iv.a < f.domain.a - s or iv.b > f.domain.b + s:
        raise DomainViolation(
            f"interval [{iv.a}, {iv.b}] is not contained in the domain of {f.label}"
        )


def _require_x(iv: Interval) -> float:
    if iv.x is None:
        raise DomainViolation("this statement needs an interior point x on the interval")
    return iv.x


@lru_cache(maxsize=None)
def _integral_mean(f: FunctionSpec, a: float, b: float, tol: float):
    res = integrate(f.eval, a, b, tol)
    return res.value / (b - a), res.abs_error_estimate / (b - a)


def _trap_lhs(f, iv, x, tol):
    """Signed weighted-endpoint minus integral-mean, plus the quadrature error."""
    mean, err = _integral_mean(f, iv.a, iv.b, tol)
    weighted = ((iv.b - x) * f.eval(iv.b) + (x - iv.a) * f.eval(iv.a)) / iv.width
    return weighted - mean, err


def lhs_trapezoid_general(f: FunctionSpec, iv: Interval, tol: float = DEFAULT_TOL) -> float:
    """|((b-x)f(b) + (x-a)f(a))/(b-a) - integral mean| at iv.x."""
    _check_iv(f, iv)
    x = _require_x(iv)
    signed, _ = _trap_lhs(f, iv, x, tol)
    return abs(signed)


# -- hypothesis checks (memoized per input tuple) ----------------------------


@lru_cache(maxsize=None)
def _abs_deriv_class_holds(
    f: FunctionSpec,
    q: float,
    a: float,
    b: float,
    class_name: str,
    h: Optional[HKernel],
    s: Optional[float],
    grid: int,
) -> bool:
    g = AbsDerivPower(f, q, Interval(a, b))
    return classes.test_membership(g, class_name, h=h, s=s, grid=grid).holds


@lru_cache(maxsize=None)
def _supermultiplicative_holds(h: HKernel) -> bool:
    return check_supermultiplicative(h).holds


@lru_cache(maxsize=None)
def _dominates_identity_holds(h: HKernel) -> bool:
    return check_dominates_identity(h).holds


def _hyp_th1(f, iv, h, grid):
    return {
        "abs_deriv_h_convex": _abs_deriv_class_holds(
            f, 1.0, iv.a, iv.b, "h_convex", h, None, grid
        ),
        "h_supermultiplicative": _supermultiplicative_holds(h),
        "h_dominates_identity": _dominates_identity_holds(h),
    }


def _hyp_power_q(f, iv, h, q, grid):
    return {
        "abs_deriv_q_h_convex": _abs_deriv_class_holds(
            f, q, iv.a, iv.b, "h_convex", h, None, grid
        )
    }


def _hyp_th3(f, iv, h, q, grid):
    hyp = _hyp_power_q(f, iv, h, q, grid)
    hyp["h_supermultiplicative"] = _supermultiplicative_holds(h)
    hyp["h_dominates_identity"] = _dominates_identity_holds(h)
    return hyp


# -- kernel moments with divergence guard ------------------------------------


def _moments_or_raise(h: HKernel, tol: float, needed: tuple) -> MomentSet:
    ms = moments(h, tol)
    bad = [name for name in needed if not getattr(ms, name).converged]
    if bad:
        raise DivergentKernel(
            f"kernel {h.label}: moment integral(s) {', '.join(bad)} did not converge"
        )
    return ms


def _require_p(p) -> float:
    if p is None or not (isinstance(p, (int, float)) and math.isfinite(p)) or not p > 1:
        raise BadExponent(f"p must be a finite real > 1, got {p}")
    return float(p)


def _require_q(q) -> float:
    if q is None or not (isinstance(q, (int, float)) and math.isfinite(q)) or not q > 1:
        raise BadExponent(f"q must be a finite real > 1, got {q}")
    return float(q)


# -- identity (lemma) ---------------------------------------------------------


def _lemma_residual(f: FunctionSpec, iv: Interval, tol: float):
    _check_iv(f, iv)
    x = _require_x(iv)
    a, b = iv.a, iv.b
    left, err0 = _trap_lhs(f, iv, x, tol)
    r1 = integrate(lambda t: (t - 1.0) * f.deriv(t * x + (1.0 - t) * a), 0.0, 1.0, tol)
    r2 = integrate(lambda t: (1.0 - t) * f.deriv(t * x + (1.0 - t) * b), 0.0, 1.0, tol)
    w1 = (x - a) ** 2 / (b - a)
    w2 = (b - x) ** 2 / (b - a)
    right = w1 * r1.value + w2 * r2.value
    residual = abs(left - right)
    quad_err = err0 + w1 * r1.abs_error_estimate + w2 * r2.abs_error_estimate
    return residual, quad_err


def lemma_identity_residual(f: FunctionSpec, iv: Interval, tol: float = DEFAULT_TOL) -> float:
    """|left side - right side| of the weighted-endpoint integral identity.

    For smooth f the residual is pure quadrature noise; it doubles as an
    end-to-end check that the derivative and the integrator agree.
    """
    return _lemma_residual(f, iv, tol)[0]


def lemma_report(f, iv, tol=DEFAULT_TOL) -> BoundReport:
    """Identity residual packaged as a report: holds iff residual <= 10*tol."""
    residual, quad_err = _lemma_residual(f, iv, tol)
    return _make_report(
        "lemma110",
        _inputs(f, iv, iv.x, tol=tol),
        residual,
        10.0 * tol,
        {},
        quad_err,
        note="identity residual vs 10*tol",
    )


# -- first family: |f'| kernel-convex ----------------------------------------


def th1_bound(
    f: FunctionSpec,
    iv: Interval,
    h: HKernel,
    tol: float = DEFAULT_TOL,
    hyp_grid: int = HYP_GRID,
) -> BoundReport:
    _check_iv(f, iv)
    x = _require_x(iv)
    ms = _moments_or_raise(h, tol, ("m_prod", "m_sq"))
    signed, lerr = _trap_lhs(f, iv, x, tol)
    dx, da, db = abs(f.deriv(x)), abs(f.deriv(iv.a)), abs(f.deriv(iv.b))
    wa = (x - iv.a) ** 2 / iv.width
    wb = (iv.b - x) ** 2 / iv.width
    rhs = wa * (dx * ms.m_prod.value + da * ms.m_sq.value) + wb * (
        dx * ms.m_prod.value + db * ms.m_sq.value
    )
    quad_err = lerr + ms.m_prod.abs_error_estimate + ms.m_sq.abs_error_estimate
    return _make_report(
        "th1_eq21",
        _inputs(f, iv, x, h, tol=tol),
        abs(signed),
        rhs,
        _hyp_th1(f, iv, h, hyp_grid),
        quad_err,
    )


def cor1_bound(f, iv, h, tol=DEFAULT_TOL, hyp_grid=HYP_GRID) -> BoundReport:
    _check_iv(f, iv)
    ms = _moments_or_raise(h, tol, ("m_prod", "m_sq"))
    mid = iv.mid
    signed, lerr = _trap_lhs(f, iv, mid, tol)
    dm, da, db = abs(f.deriv(mid)), abs(f.deriv(iv.a)), abs(f.deriv(iv.b))
    rhs = iv.width / 4.0 * (2.0 * dm * ms.m_prod.value + (da + db) * ms.m_sq.value)
    quad_err = lerr + ms.m_prod.abs_error_estimate + ms.m_sq.abs_error_estimate
    return _make_report(
        "cor1",
        _inputs(f, iv, mid, h, tol=tol),
        abs(signed),
        rhs,
        _hyp_th1(f, iv, h, hyp_grid),
        quad_err,
    )


def cor2_bound(f, iv, h, tol=DEFAULT_TOL, hyp_grid=HYP_GRID) -> BoundReport:
    _check_iv(f, iv)
    ms = _moments_or_raise(h, tol, ("m_prod", "m_sq"))
    mid = iv.mid
    signed, lerr = _trap_lhs(f, iv, mid, tol)
    da, db = abs(f.deriv(iv.a)), abs(f.deriv(iv.b))
    rhs = (
        iv.width
        / 4.0
        * (da + db)
        * (2.0 * h.eval(0.5) * ms.m_prod.value + ms.m_sq.value)
    )
    quad_err = lerr + ms.m_prod.abs_error_estimate + ms.m_sq.abs_error_estimate
    return _make_report(
        "cor2",
        _inputs(f, iv, mid, h, tol=tol),
        abs(signed),
        rhs,
        _hyp_th1(f, iv, h, hyp_grid),
        quad_err,
    )


def cor3_bound(f, iv, tol=DEFAULT_TOL, hyp_grid=HYP_GRID) -> BoundReport:
    """Identity-kernel reduction of cor2: rhs = (b-a)/8 * (|f'(a)| + |f'(b)|)."""
    _check_iv(f, iv)
    mid = iv.mid
    signed, lerr = _trap_lhs(f, iv, mid, tol)
    da, db = abs(f.deriv(iv.a)), abs(f.deriv(iv.b))
    rhs = iv.width / 8.0 * (da + db)
    return _make_report(
        "cor3",
        _inputs(f, iv, mid, IDENTITY, tol=tol),
        abs(signed),
        rhs,
        _hyp_th1(f, iv, IDENTITY, hyp_grid),
        lerr,
    )


# -- second family: |f'|^q kernel-convex, Holder split ------------------------


def _th2_rhs(iv, x, dx, da, db, m_t, m_1mt, p):
    q = p / (p - 1.0)
    cp = (1.0 / (1.0 + p)) ** (1.0 / p)
    wa = (x - iv.a) ** 2 / iv.width
    wb = (iv.b - x) ** 2 / iv.width
    return cp * (
        wa * (dx ** q * m_t + da ** q * m_1mt) ** (1.0 / q)
        + wb * (dx ** q * m_t + db ** q * m_1mt) ** (1.0 / q)
    )


def th2_bound(
    f: FunctionSpec,
    iv: Interval,
    h: HKernel,
    p: float,
    tol: float = DEFAULT_TOL,
    hyp_grid: int = HYP_GRID,
    statement_id: str = "th2_eq22",
) -> BoundReport:
    p = _require_p(p)
    q = p / (p - 1.0)
    _check_iv(f, iv)
    x = _require_x(iv)
    ms = _moments_or_raise(h, tol, ("m_t", "m_1mt"))
    signed, lerr = _trap_lhs(f, iv, x, tol)
    dx, da, db = abs(f.deriv(x)), abs(f.deriv(iv.a)), abs(f.deriv(iv.b))
    rhs = _th2_rhs(iv, x, dx, da, db, ms.m_t.value, ms.m_1mt.value, p)
    quad_err = lerr + ms.m_t.abs_error_estimate + ms.m_1mt.abs_error_estimate
    return _make_report(
        statement_id,
        _inputs(f, iv, x, h, "p", p, tol=tol),
        abs(signed),
        rhs,
        _hyp_power_q(f, iv, h, q, hyp_grid),
        quad_err,
    )


def cor4_bound(f, iv, p, tol=DEFAULT_TOL, hyp_grid=HYP_GRID) -> BoundReport:
    return th2_bound(f, iv, IDENTITY, p, tol, hyp_grid, statement_id="cor4")


def cor5_bound(f, iv, h, p, tol=DEFAULT_TOL, hyp_grid=HYP_GRID) -> BoundReport:
    if h.kind != "power":
        raise DomainViolation("cor5 applies to power kernels t^s with s in (0,1]")
    return th2_bound(f, iv, h, p, tol, hyp_grid, statement_id="cor5")


def cor6_bound(
    f, iv, p, tol=DEFAULT_TOL, hyp_grid=HYP_GRID, use_printed: bool = False
) -> BoundReport:
    """Constant-kernel case of the Holder-split bound.

    The default right side keeps both endpoint terms (direct substitution
    of h = 1); the compact single-bracket variant that drops the f'(b)
    term is suspected garbled and is available behind ``use_printed`` for
    comparison.  Both values are always reported.
    """
    p = _require_p(p)
    q = p / (p - 1.0)
    _check_iv(f, iv)
    x = _require_x(iv)
    signed, lerr = _trap_lhs(f, iv, x, tol)
    dx, da, db = abs(f.deriv(x)), abs(f.deriv(iv.a)), abs(f.deriv(iv.b))
    derived = _th2_rhs(iv, x, dx, da, db, 1.0, 1.0, p)
    cp = (1.0 / (1.0 + p)) ** (1.0 / p)
    printed = (
        cp
        * ((x - iv.a) ** 2 + (iv.b - x) ** 2)
        / iv.width
        * (dx ** q + da ** q) ** (1.0 / q)
    )
    rhs = printed if use_printed else derived
    extra = {"rhs_derived": derived} if use_printed else {"rhs_printed": printed}
    note = "printed single-bracket variant" if use_printed else ""
    return _make_report(
        "cor6",
        _inputs(f, iv, x, ONE, "p", p, tol=tol),
        abs(signed),
        rhs,
        _hyp_power_q(f, iv, ONE, q, hyp_grid),
        lerr,
        note=note,
        extra=extra,
    )


def th2_specializations(
    f: FunctionSpec,
    iv: Interval,
    h: HKernel,
    p: float,
    which: str,
    tol: float = DEFAULT_TOL,
    hyp_grid: int = HYP_GRID,
) -> BoundReport:
    """Endpoint and midpoint specializations of the Holder-split bound.

    which is one of "x=a", "x=b", "x=mid", "mid_fprime_zero".  The last one
    requires |f'((a+b)/2)| <= 1e-9 and raises HypothesisFailed otherwise.
    """
    p = _require_p(p)
    q = p / (p - 1.0)
    _check_iv(f, iv)
    ms = _moments_or_raise(h, tol, ("m_t", "m_1mt"))
    cp = (1.0 / (1.0 + p)) ** (1.0 / p)
    da, db = abs(f.deriv(iv.a)), abs(f.deriv(iv.b))
    hyp = _hyp_power_q(f, iv, h, q, hyp_grid)
    quad_base = ms.m_t.abs_error_estimate + ms.m_1mt.abs_error_estimate

    if which == "x=a":
        signed, lerr = _trap_lhs(f, iv, iv.a, tol)
        rhs = iv.width * cp * (da ** q * ms.m_t.value + db ** q * ms.m_1mt.value) ** (1.0 / q)
        sid, x = "rem_xa", iv.a
    elif which == "x=b":
        signed, lerr = _trap_lhs(f, iv, iv.b, tol)
        rhs = iv.width * cp * (db ** q * ms.m_t.value + da ** q * ms.m_1mt.value) ** (1.0 / q)
        sid, x = "rem_xb", iv.b
    elif which == "x=mid":
        mid = iv.mid
        signed, lerr = _trap_lhs(f, iv, mid, tol)
        dm = abs(f.deriv(mid))
        rhs = (
            iv.width
            / 4.0
            * cp
            * (
                (dm ** q * ms.m_t.value + da ** q * ms.m_1mt.value) ** (1.0 / q)
                + (dm ** q * ms.m_t.value + db ** q * ms.m_1mt.value) ** (1.0 / q)
            )
        )
        sid, x = "rem_xmid", mid
    elif which == "mid_fprime_zero":
        mid = iv.mid
        dm = abs(f.deriv(mid))
        if dm > FPRIME_ZERO_TOL:
            raise HypothesisFailed(
                f"|f'((a+b)/2)| = {dm:g} is not ~ 0 for {f.label} on [{iv.a}, {iv.b}]"
            )
        hyp["fprime_mid_zero"] = True
        signed, lerr = _trap_lhs(f, iv, mid, tol)
        rhs = iv.width / 4.0 * cp * (da + db) * ms.m_t.value ** (1.0 / q)
        sid, x = "rem_fprime0", mid
    else:
        raise DomainViolation(f"unknown specialization {which!r}")

    return _make_report(
        sid,
        _inputs(f, iv, x, h, "p", p, tol=tol),
        abs(signed),
        rhs,
        hyp,
        lerr + quad_base,
    )


# -- third family: |f'|^q kernel-convex, power-mean split ---------------------


def _th3_terms(iv, x, dx, da, db, m_prod, m_sq, q):
    wa = (x - iv.a) ** 2 / iv.width
    wb = (iv.b - x) ** 2 / iv.width
    return wa * (dx ** q * m_prod + da ** q * m_sq) ** (1.0 / q) + wb * (
        dx ** q * m_prod + db ** q * m_sq
    ) ** (1.0 / q)


def th3_bound(
    f: FunctionSpec,
    iv: Interval,
    h: HKernel,
    q: float,
    tol: float = DEFAULT_TOL,
    hyp_grid: int = HYP_GRID,
    use_half_factor: bool = False,
    statement_id: str = "th3",
) -> BoundReport:
    """Power-mean-split bound with leading factor (integral of h(1-t))^(1-1/q).

    ``use_half_factor`` switches to the tighter (1/2)^(1-1/q) leading factor
    that the split itself yields; the non-default value is always reported
    in ``extra`` for comparison.
    """
    q = _require_q(q)
    _check_iv(f, iv)
    x = _require_x(iv)
    ms = _moments_or_raise(h, tol, ("m_1mt", "m_prod", "m_sq"))
    signed, lerr = _trap_lhs(f, iv, x, tol)
    dx, da, db = abs(f.deriv(x)), abs(f.deriv(iv.a)), abs(f.deriv(iv.b))
    core = _th3_terms(iv, x, dx, da, db, ms.m_prod.value, ms.m_sq.value, q)
    factor_stmt = ms.m_1mt.value ** (1.0 - 1.0 / q)
    factor_half = 0.5 ** (1.0 - 1.0 / q)
    rhs = (factor_half if use_half_factor else factor_stmt) * core
    other = (factor_stmt if use_half_factor else factor_half) * core
    extra = {"rhs_half_factor": other} if not use_half_factor else {"rhs_moment_factor": other}
    quad_err = (
        lerr
        + ms.m_1mt.abs_error_estimate
        + ms.m_prod.abs_error_estimate
        + ms.m_sq.abs_error_estimate
    )
    return _make_report(
        statement_id,
        _inputs(f, iv, x, h, "q", q, tol=tol),
        abs(signed),
        rhs,
        _hyp_th3(f, iv, h, q, hyp_grid),
        quad_err,
        note="half-factor variant" if use_half_factor else "",
        extra=extra,
    )


def cor7_bound(
    f, iv, h, q, tol=DEFAULT_TOL, hyp_grid=HYP_GRID, use_half_factor=False
) -> BoundReport:
    iv_mid = Interval(iv.a, iv.b, iv.mid)
    return th3_bound(
        f, iv_mid, h, q, tol, hyp_grid, use_half_factor, statement_id="cor7"
    )


def rem_th3_identity_bound(f, iv, q, tol=DEFAULT_TOL, hyp_grid=HYP_GRID) -> BoundReport:
    """Identity-kernel display of cor7 with the closed constants (1/2, 1/3)."""
    q = _require_q(q)
    _check_iv(f, iv)
    mid = iv.mid
    signed, lerr = _trap_lhs(f, iv, mid, tol)
    dm, da, db = abs(f.deriv(mid)), abs(f.deriv(iv.a)), abs(f.deriv(iv.b))
    inv_p = 1.0 - 1.0 / q
    rhs = (
        iv.width
        / 4.0
        * 0.5 ** inv_p
        * (1.0 / 3.0) ** (1.0 / q)
        * (
            (0.5 * dm ** q + da ** q) ** (1.0 / q)
            + (0.5 * dm ** q + db ** q) ** (1.0 / q)
        )
    )
    return _make_report(
        "rem_th3_ht",
        _inputs(f, iv, mid, IDENTITY, "q", q, tol=tol),
        abs(signed),
        rhs,
        _hyp_th3(f, iv, IDENTITY, q, hyp_grid),
        lerr,
    )


def cor8_bound(f, iv, q, tol=DEFAULT_TOL, hyp_grid=HYP_GRID) -> BoundReport:
    """Constant-kernel case of cor7, with the chained looser bound in extra."""
    q = _require_q(q)
    _check_iv(f, iv)
    mid = iv.mid
    signed, lerr = _trap_lhs(f, iv, mid, tol)
    dm, da, db = abs(f.deriv(mid)), abs(f.deriv(iv.a)), abs(f.deriv(iv.b))
    rhs = (
        iv.width
        / 4.0
        * ((dm ** q + da ** q) ** (1.0 / q) + (dm ** q + db ** q) ** (1.0 / q))
    )
    chain = iv.width / 2.0 * (da + db)
    return _make_report(
        "cor8",
        _inputs(f, iv, mid, ONE, "q", q, tol=tol),
        abs(signed),
        rhs,
        _hyp_th3(f, iv, ONE, q, hyp_grid),
        lerr,
        extra={"chain_rhs": chain},
    )


# -- background bounds --------------------------------------------------------


def background_bounds(
    f: FunctionSpec,
    iv: Interval,
    which: str,
    p: Optional[float] = None,
    s: Optional[float] = None,
    tol: float = DEFAULT_TOL,
    hyp_grid: int = HYP_GRID,
) -> BoundReport:
    """Classical reference bounds used as regression oracles for the
    identity/power-kernel reductions: eq109, eq111, eq112."""
    _check_iv(f, iv)
    if which == "eq109":
        mid = iv.mid
        signed, lerr = _trap_lhs(f, iv, mid, tol)
        da, db = abs(f.deriv(iv.a)), abs(f.deriv(iv.b))
        rhs = iv.width * (da + db) / 8.0
        hyp = {
            "abs_deriv_convex": _abs_deriv_class_holds(
                f, 1.0, iv.a, iv.b, "convex", None, None, hyp_grid
            )
        }
        return _make_report(
            "eq109", _inputs(f, iv, mid, tol=tol), abs(signed), rhs, hyp, lerr
        )

    p = _require_p(p)
    q = p / (p - 1.0)
    x = _require_x(iv)
    signed, lerr = _trap_lhs(f, iv, x, tol)
    dx, da, db = abs(f.deriv(x)), abs(f.deriv(iv.a)), abs(f.deriv(iv.b))
    cp = (1.0 / (1.0 + p)) ** (1.0 / p)
    bracket = (
        (x - iv.a) ** 2 * (da ** q + dx ** q) ** (1.0 / q)
        + (iv.b - x) ** 2 * (dx ** q + db ** q) ** (1.0 / q)
    ) / iv.width

    if which == "eq111":
        rhs = cp * 0.5 ** (1.0 / q) * bracket
        hyp = {
            "abs_deriv_q_convex": _abs_deriv_class_holds(
                f, q, iv.a, iv.b, "convex", None, None, hyp_grid
            )
        }
        return _make_report(
            "eq111", _inputs(f, iv, x, None, "p", p, tol=tol), abs(signed), rhs, hyp, lerr
        )
    if which == "eq112":
        if s is None or not (0.0 < s <= 1.0):
            raise BadExponent(f"eq112 needs s in (0, 1], got {s}")
        rhs = cp * (1.0 / (s + 1.0)) ** (1.0 / q) * bracket
        hyp = {
            "abs_deriv_q_s_convex": _abs_deriv_class_holds(
                f, q, iv.a, iv.b, "s_convex", None, s, hyp_grid
            )
        }
        return _make_report(
            "eq112",
            _inputs(f, iv, x, None, "p", p, s=s, tol=tol),
            abs(signed),
            rhs,
            hyp,
            lerr,
        )
    raise DomainViolation(f"unknown background bound {which!r}")


# -- convexity sanity ---------------------------------------------------------


def hadamard_triple(f: FunctionSpec, iv: Interval, tol: float = DEFAULT_TOL):
    """(f(midpoint), integral mean, endpoint average) for the double-bound check."""
    _check_iv(f, iv)
    mean, _ = _integral_mean(f, iv.a, iv.b, tol)
    return f.eval(iv.mid), mean, 0.5 * (f.eval(iv.a) + f.eval(iv.b))


# -- dispatcher ----------------------------------------------------------------


def evaluate(
    statement: str,
    f: FunctionSpec,
    iv: Interval,
    h: Optional[HKernel] = None,
    exponent: Optional[float] = None,
    s: Optional[float] = None,
    tol: float = DEFAULT_TOL,
    hyp_grid: int = HYP_GRID,
    use_printed_cor6: bool = False,
    use_half_factor_th3: bool = False,
) -> BoundReport:
    """Evaluate any statement by id; the single entry point used by the CLI
    and the sweep engine."""
    sid = canonical_statement(statement)
    meta = STATEMENT_META[sid]

    if h is not None and not moments(h, tol).all_converged:
        raise DivergentKernel(
            f"kernel {h.label}: moment integrals do not converge at tol {tol:g}"
        )

    if meta.kernel == "none":
        h_used = None
    elif meta.kernel == "any":
        if h is None:
            raise DomainViolation(f"statement {sid} needs a kernel h")
        h_used = h
    elif meta.kernel == "power":
        if h is None or h.kind != "power":
            raise DomainViolation(f"statement {sid} needs a power:s kernel")
        h_used = h
    else:  # fixed "id" or "one"
        fixed = IDENTITY if meta.kernel == "id" else ONE
        if h is not None and h.kind != fixed.kind:
            raise DomainViolation(
                f"statement {sid} fixes the kernel to {fixed.label!r}; got {h.label!r}"
            )
        h_used = fixed

    if meta.x == "free":
        iv_used = iv
        _require_x(iv)
    elif meta.x == "mid":
        iv_used = Interval(iv.a, iv.b, iv.mid)
    elif meta.x == "a":
        iv_used = Interval(iv.a, iv.b, iv.a)
    else:
        iv_used = Interval(iv.a, iv.b, iv.b)

    if sid == "lemma110":
        return lemma_report(f, iv_used, tol)
    if sid == "eq109":
        return background_bounds(f, iv_used, "eq109", tol=tol, hyp_grid=hyp_grid)
    if sid == "eq111":
        return background_bounds(f, iv_used, "eq111", p=exponent, tol=tol, hyp_grid=hyp_grid)
    if sid == "eq112":
        return background_bounds(
            f, iv_used, "eq112", p=exponent, s=s, tol=tol, hyp_grid=hyp_grid
        )
    if sid == "th1_eq21":
        return th1_bound(f, iv_used, h_used, tol, hyp_grid)
    if sid == "cor1":
        return cor1_bound(f, iv_used, h_used, tol, hyp_grid)
    if sid == "cor2":
        return cor2_bound(f, iv_used, h_used, tol, hyp_grid)
    if sid == "cor3":
        return cor3_bound(f, iv_used, tol, hyp_grid)
    if sid == "th2_eq22":
        return th2_bound(f, iv_used, h_used, exponent, tol, hyp_grid)
    if sid == "cor4":
        return cor4_bound(f, iv_used, exponent, tol, hyp_grid)
    if sid == "cor5":
        return cor5_bound(f, iv_used, h_used, exponent, tol, hyp_grid)
    if sid == "cor6":
        return cor6_bound(f, iv_used, exponent, tol, hyp_grid, use_printed_cor6)
    if sid == "rem_xa":
        return th2_specializations(f, iv_used, h_used, exponent, "x=a", tol, hyp_grid)
    if sid == "rem_xb":
        return th2_specializations(f, iv_used, h_used, exponent, "x=b", tol, hyp_grid)
    if sid == "rem_xmid":
        return th2_specializations(f, iv_used, h_used, exponent, "x=mid", tol, hyp_grid)
    if sid == "rem_fprime0":
        return th2_specializations(
            f, iv_used, h_used, exponent, "mid_fprime_zero", tol, hyp_grid
        )
    if sid == "th3":
        return th3_bound(f, iv_used, h_used, exponent, tol, hyp_grid, use_half_factor_th3)
    if sid == "cor7":
        return cor7_bound(f, iv_used, h_used, exponent, tol, hyp_grid, use_half_factor_th3)
    if sid == "rem_th3_ht":
        return rem_th3_identity_bound(f, iv_used, exponent, tol, hyp_grid)
    if sid == "cor8":
        return cor8_bound(f, iv_used, exponent, tol, hyp_grid)
    raise DomainViolation(f"unhandled statement {sid!r}")
