"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines as they
stream; `-rA` shows them in the summary otherwise.
"""

import math
import random
import time

import pytest

from hhbounds.bounds import (
    background_bounds,
    cor1_bound,
    cor2_bound,
    cor7_bound,
    evaluate,
    hadamard_triple,
    lemma_identity_residual,
    th2_bound,
)
from hhbounds.classes import test_membership
from hhbounds.errors import DivergentKernel
from hhbounds.funcat import Interval, affine, exponent, from_callable, power, reciprocal
from hhbounds.hkernel import (
    GODUNOVA,
    IDENTITY,
    ONE,
    check_dominates_identity,
    moments,
    power_general,
    power_kernel,
)
from hhbounds.means import prop_bound
from hhbounds.sweep import SweepConfig, run_sweep

import numpy as np


def _report(num, name, ok, started, limit, detail=""):
    elapsed = time.perf_counter() - started
    status = "PASS" if ok and elapsed < limit else "FAIL"
    print(f"ACCEPTANCE {num} [{name}]: {status} ({elapsed:.2f}s / limit {limit:.0f}s) {detail}")
    assert ok, detail
    assert elapsed < limit, f"runtime {elapsed:.2f}s exceeded {limit}s"


def _random_function(rng, positive_only=False):
    kind = rng.choice(("poly2", "poly3", "poly4", "exp", "recip", "affine"))
    if kind == "recip" or positive_only:
        a = 0.3 + rng.random()
        b = a + 0.3 + rng.random()
    else:
        a = -1.5 + 2.0 * rng.random()
        b = a + 0.3 + 1.5 * rng.random()
    if kind == "poly2":
        return power(2, a, b)
    if kind == "poly3" or (kind in ("poly4",) and a <= 0 <= b and rng.random() < 0.0):
        return power(3, a, b)
    if kind == "poly4":
        return power(4, a, b)
    if kind == "exp":
        return exponent(a, b)
    if kind == "recip":
        return reciprocal(a, b)
    return affine(rng.uniform(-2, 2), rng.uniform(-3, 3), a, b)


def test_criterion_1_cor3_reduction():
    started = time.perf_counter()
    rng = random.Random(101)
    worst = 0.0
    for _ in range(50):
        f = _random_function(rng)
        a, b = f.domain.a, f.domain.b
        r = cor2_bound(f, Interval(a, b), IDENTITY)
        closed = (b - a) / 8.0 * (abs(f.deriv(a)) + abs(f.deriv(b)))
        worst = max(worst, abs(r.rhs - closed))
    _report(1, "cor2+identity reduces to (b-a)/8 rule", worst <= 1e-12, started, 1.0,
            f"max |delta| = {worst:.3e}")


def test_criterion_2_reduction_equivalences():
    started = time.perf_counter()
    rng = random.Random(202)
    worst111 = 0.0
    for _ in range(20):
        f = _random_function(rng)
        a, b = f.domain.a, f.domain.b
        x = a + rng.random() * (b - a)
        p = 1.2 + 3.0 * rng.random()
        r1 = th2_bound(f, Interval(a, b, x), IDENTITY, p=p)
        r2 = background_bounds(f, Interval(a, b, x), "eq111", p=p)
        worst111 = max(worst111, abs(r1.rhs - r2.rhs))
    worst112 = 0.0
    for s in (0.25, 0.5, 0.75):
        h = power_kernel(s)
        for _ in range(20):
            f = _random_function(rng, positive_only=True)
            a, b = f.domain.a, f.domain.b
            x = a + rng.random() * (b - a)
            p = 1.2 + 3.0 * rng.random()
            r1 = th2_bound(f, Interval(a, b, x), h, p=p, tol=1e-13)
            r2 = background_bounds(f, Interval(a, b, x), "eq112", p=p, s=s)
            worst112 = max(worst112, abs(r1.rhs - r2.rhs))
    ok = worst111 <= 1e-12 and worst112 <= 1e-12
    _report(2, "th2 reductions match eq111/eq112", ok, started, 1.0,
            f"max |delta| eq111 = {worst111:.3e}, eq112 = {worst112:.3e}")


def test_criterion_3_lemma_identity():
    started = time.perf_counter()
    rng = random.Random(303)
    worst = 0.0
    makers = (
        lambda a, b: power(2, a, b),
        lambda a, b: power(4, a, b),
        lambda a, b: exponent(a, b),
        None,  # reciprocal on sub-intervals of [1, 2]
    )
    for make in makers:
        for _ in range(25):
            if make is None:
                a = 1.0 + 0.4 * rng.random()
                b = a + 0.1 + (2.0 - a - 0.1) * rng.random()
                f = reciprocal(a, b)
            else:
                a = -2.0 + 3.0 * rng.random()
                b = a + 0.3 + 2.0 * rng.random()
                f = make(a, b)
            x = a + rng.random() * (b - a)
            worst = max(worst, lemma_identity_residual(f, Interval(a, b, x)))
    _report(3, "weighted-endpoint identity residual", worst <= 1e-8, started, 5.0,
            f"max residual = {worst:.3e}")


def test_criterion_4_global_validity_sweep():
    started = time.perf_counter()
    result = run_sweep(SweepConfig())
    s = result.summary
    wanted = {
        "th1_eq21", "cor1", "cor2", "th2_eq22", "rem_xa", "rem_xb", "rem_xmid",
        "rem_fprime0", "cor6", "th3", "cor7", "cor8",
    }
    seen = {o.report.statement_id for o in result.rows if o.evaluated}
    ok = (
        s["failed"] == 0
        and s["min_gap"] is not None
        and s["min_gap"] >= -1e-9
        and wanted <= seen
        and s["total"] >= 5000
    )
    _report(4, "desk-scale validity sweep", ok, started, 30.0,
            f"rows = {s['total']}, evaluated = {s['evaluated']}, min gap = {s['min_gap']:.3e}")


def test_criterion_5_proposition_cross_checks():
    started = time.perf_counter()
    ok = True
    details = []

    r = prop_bound("p301", 1, 3, n=2)
    ok &= abs(r.lhs - 2.0 / 3.0) < 1e-10 and abs(r.rhs - 2.0) < 1e-10
    r = prop_bound("p302", 1, 2)
    ok &= abs(r.lhs - 0.056852819440054714) < 1e-7 and abs(r.rhs - 0.1412037037037037) < 1e-7

    worst = 0.0
    pairs = ((1.0, 2.0), (1.0, 3.0), (0.5, 4.0), (2.0, 2.001))
    for a, b in pairs:
        iv = Interval(a, b)
        for n in (2, 3, 4, -2):
            fp = power(n, a, b)
            worst = max(worst, abs(prop_bound("p301", a, b, n=n).rhs - cor1_bound(fp, iv, IDENTITY).rhs))
            worst = max(worst, abs(prop_bound("p303", a, b, n=n).rhs - cor2_bound(fp, iv, IDENTITY).rhs))
            for q in (1.5, 2.0, 3.0):
                worst = max(
                    worst,
                    abs(prop_bound("p305", a, b, n=n, q=q).rhs - cor7_bound(fp, iv, IDENTITY, q=q).rhs),
                )
        fr = reciprocal(a, b)
        worst = max(worst, abs(prop_bound("p302", a, b).rhs - cor1_bound(fr, iv, IDENTITY).rhs))
        worst = max(worst, abs(prop_bound("p304", a, b).rhs - cor2_bound(fr, iv, IDENTITY).rhs))
    ok &= worst <= 1e-10
    details.append(f"max |rhs delta| = {worst:.3e}")
    _report(5, "mean inequalities match corollary evaluations", bool(ok), started, 2.0,
            "; ".join(details))


def test_criterion_6_moment_closed_forms():
    started = time.perf_counter()
    worst = 0.0
    for s in (0.25, 0.5, 0.75, 1.0):
        ms = moments(power_kernel(s))
        bt = math.gamma(s + 1.0) ** 2 / math.gamma(2.0 * s + 2.0)
        worst = max(
            worst,
            abs(ms.m_t.value - 1.0 / (s + 1.0)),
            abs(ms.m_1mt.value - 1.0 / (s + 1.0)),
            abs(ms.m_prod.value - bt),
            abs(ms.m_sq.value - 1.0 / (2.0 * s + 1.0)),
        )
    _report(6, "power-kernel moment closed forms", worst <= 1e-9, started, 1.0,
            f"max |delta| = {worst:.3e}")


def test_criterion_7_class_lattice():
    started = time.perf_counter()
    convex_nonneg = [
        power(2, 0.0, 2.0),
        power(4, 0.0, 2.0),
        exponent(-1.0, 1.0),
        reciprocal(1.0, 2.0),
        affine(1.0, 0.5, 0.0, 1.0),
    ]
    dominating = [
        IDENTITY,
        power_kernel(0.25),
        power_kernel(0.5),
        power_kernel(0.75),
        ONE,
        power_general(0.5),
        power_general(1.0),
    ]
    ok = all(check_dominates_identity(h).holds for h in dominating)
    for f in convex_nonneg:
        for h in dominating:
            ok &= test_membership(f, "h_convex", h=h).holds

    chk = check_dominates_identity(power_general(2.0))
    ok &= (not chk.holds) and chk.witness is not None

    sqrt_fn = from_callable(np.sqrt, 0.0, 1.0, name="sqrt")
    for f in convex_nonneg + [sqrt_fn]:
        ok &= (
            test_membership(f, "convex").holds
            == test_membership(f, "s_convex", s=1.0).holds
        )
    _report(7, "class lattice and dominance witnesses", bool(ok), started, 10.0)


def test_criterion_8_hadamard_sanity():
    started = time.perf_counter()
    cfg = SweepConfig()
    worst = 0.0
    checked = 0
    for spec in cfg.functions:
        for a, b in cfg.intervals:
            try:
                from hhbounds.funcat import parse_function

                f = parse_function(spec, a, b)
            except Exception:
                continue
            left, mid, right = hadamard_triple(f, Interval(a, b))
            worst = max(worst, left - mid, mid - right)
            checked += 1
    _report(8, "midpoint <= mean <= endpoint average", worst <= 1e-9, started, 2.0,
            f"{checked} (f, interval) combos, max violation = {worst:.3e}")


def test_criterion_9_divergent_kernel_handling():
    started = time.perf_counter()
    f = power(2, 0.0, 1.0)
    iv = Interval(0.0, 1.0, 0.5)
    statements = (
        "th1", "cor1", "cor2", "cor3", "th2", "cor4", "cor5", "cor6",
        "rem_xa", "rem_xb", "rem_xmid", "rem_fprime0", "th3", "cor7",
        "rem_th3_ht", "cor8",
    )
    ok = True
    for sid in statements:
        try:
            evaluate(sid, f, iv, h=GODUNOVA, exponent=2.0)
            ok = False  # a finite certified bound must never come back
        except DivergentKernel:
            pass

    res = run_sweep(
        SweepConfig(
            functions=("poly:2",),
            kernels=("godunova",),
            intervals=((0.0, 1.0),),
            x_grid=3,
            exponents=(2.0,),
            statements=("th1", "th2", "th3"),
        )
    )
    ok &= res.summary["evaluated"] == 0
    ok &= all(o.status == "skipped:divergent-moments" for o in res.rows)
    _report(9, "divergent kernels are refused or skipped", bool(ok), started, 1.0)
