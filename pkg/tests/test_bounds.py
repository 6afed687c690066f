import math
import random

import pytest

from hhbounds import bounds
from hhbounds.bounds import (
    background_bounds,
    cor1_bound,
    cor2_bound,
    cor3_bound,
    cor6_bound,
    cor7_bound,
    cor8_bound,
    evaluate,
    hadamard_triple,
    lemma_identity_residual,
    lhs_trapezoid_general,
    rem_th3_identity_bound,
    th1_bound,
    th2_bound,
    th2_specializations,
    th3_bound,
)
from hhbounds.errors import (
    BadExponent,
    DivergentKernel,
    DomainViolation,
    HypothesisFailed,
)
from hhbounds.funcat import Interval, affine, exponent, from_callable, power, reciprocal
from hhbounds.hkernel import GODUNOVA, IDENTITY, ONE, power_general, power_kernel

LN2 = 0.6931471805599453


def iv(a, b, x=None):
    return Interval(a, b, x)


# -- identity -----------------------------------------------------------------


def test_lemma_identity_square():
    f = power(2, 0.0, 1.0)
    # both sides equal 1/6: left = 1/2 - 1/3, right = -1/24 + 5/24
    assert lhs_trapezoid_general(f, iv(0, 1, 0.5)) == pytest.approx(1.0 / 6.0, abs=1e-12)
    assert lemma_identity_residual(f, iv(0, 1, 0.5)) <= 1e-9


def test_lemma_identity_affine_exact():
    f = affine(2.0, -3.0, -1.0, 2.0)
    assert lemma_identity_residual(f, iv(-1, 2, 0.7)) <= 1e-9


def test_lemma_identity_exponential_analytic_oracle():
    # frozen closed forms: left = 1.3 - 0.3 e; the two weighted integrals have
    # elementary antiderivatives; the oracle is self-consistent to 6e-17.
    a, b, x = 0.0, 1.0, 0.3
    left = 0.7 * math.e + 0.3 - (math.e - 1.0)
    c = x - a
    i1 = -math.exp(c) / c ** 2 + 1.0 / c + 1.0 / c ** 2
    d = x - b
    i2 = math.exp(b) * ((math.exp(d) - 1.0) / d - (math.exp(d) * (d - 1.0) + 1.0) / d ** 2)
    right = (x - a) ** 2 / (b - a) * i1 + (b - x) ** 2 / (b - a) * i2
    assert left == pytest.approx(0.48451545146228625, abs=1e-15)
    assert left == pytest.approx(right, abs=1e-14)
    assert lemma_identity_residual(exponent(a, b), iv(a, b, x)) <= 1e-9


def test_lemma_identity_random_smooth_inputs():
    rng = random.Random(7)
    makers = [
        lambda a, b: power(2, a, b),
        lambda a, b: power(4, a, b),
        lambda a, b: exponent(a, b),
        lambda a, b: reciprocal(a, b),
    ]
    for k, make in enumerate(makers):
        for _ in range(25):
            if k == 3:
                a = 1.0 + rng.random() * 0.5
                b = a + 0.2 + rng.random() * (2.0 - a - 0.2)
            else:
                a = -2.0 + 3.0 * rng.random()
                b = a + 0.3 + 2.0 * rng.random()
            x = a + rng.random() * (b - a)
            f = make(a, b)
            assert lemma_identity_residual(f, iv(a, b, x)) <= 1e-8


# -- left side ----------------------------------------------------------------


def test_lhs_trapezoid_examples():
    assert lhs_trapezoid_general(power(2, 0, 1), iv(0, 1, 0.5)) == pytest.approx(1 / 6, abs=1e-12)
    assert lhs_trapezoid_general(affine(1, 2, 0, 4), iv(0, 4, 2.0)) == pytest.approx(0.0, abs=1e-12)
    assert lhs_trapezoid_general(reciprocal(1, 2), iv(1, 2, 1.5)) == pytest.approx(
        abs(0.75 - LN2), abs=1e-12
    )
    with pytest.raises(DomainViolation):
        lhs_trapezoid_general(power(2, 0, 1), iv(0, 1))  # x missing


# -- first family ---------------------------------------------------------------


def test_th1_square_identity():
    r = th1_bound(power(2, 0, 1), iv(0, 1, 0.5), IDENTITY)
    assert r.lhs == pytest.approx(1 / 6, abs=1e-12)
    assert r.rhs == pytest.approx(0.25, abs=1e-12)
    assert r.holds and r.hypotheses_ok
    assert r.gap == r.rhs - r.lhs


def test_th1_square_one_kernel():
    r = th1_bound(power(2, 0, 1), iv(0, 1, 0.5), ONE)
    assert r.rhs == pytest.approx(1.0, abs=1e-12)
    assert r.holds


def test_th1_affine_zero_lhs():
    r = th1_bound(affine(0, 1, 0, 1), iv(0, 1, 0.5), IDENTITY)
    assert r.lhs == pytest.approx(0.0, abs=1e-12)
    assert r.rhs > 0 and r.holds
    assert r.gap == pytest.approx(r.rhs, abs=1e-12)


def test_th1_roundoff_band_at_tight_edge():
    # at x = a both sides coincide exactly; fp noise may push the gap into
    # [-certify_tol, 0) which must still certify, with a note
    r = th1_bound(power(2, 0, 1), iv(0, 1, 0.0), IDENTITY)
    assert r.holds
    assert abs(r.gap) < 1e-12


def test_cor1_examples():
    r = cor1_bound(power(2, 0, 1), iv(0, 1), IDENTITY)
    assert r.rhs == pytest.approx(0.25, abs=1e-12)
    r = cor1_bound(reciprocal(1, 2), iv(1, 2), IDENTITY)
    assert r.rhs == pytest.approx(0.14120370370370369, abs=1e-10)
    assert r.lhs == pytest.approx(abs(0.75 - LN2), abs=1e-10)
    r = cor1_bound(affine(3, -2, 0, 5), iv(0, 5), power_kernel(0.5))
    assert r.lhs == pytest.approx(0.0, abs=1e-10)
    assert r.holds


def test_cor2_examples():
    r = cor2_bound(power(2, 0, 1), iv(0, 1), IDENTITY)
    assert r.rhs == pytest.approx(0.25, abs=1e-12)
    r = cor2_bound(power(2, 0, 1), iv(0, 1), ONE)
    assert r.rhs == pytest.approx(1.5, abs=1e-12)
    r = cor2_bound(reciprocal(1, 2), iv(1, 2), IDENTITY)
    assert r.rhs == pytest.approx(0.15625, abs=1e-10)


def test_cor2_identity_reduces_to_eighth_rule():
    rng = random.Random(11)
    for _ in range(50):
        a = -1.5 + 2.0 * rng.random()
        b = a + 0.3 + 2.0 * rng.random()
        n = rng.choice([2, 3, 4])
        f = power(n, a, b)
        r = cor2_bound(f, iv(a, b), IDENTITY)
        closed = (b - a) / 8.0 * (abs(f.deriv(a)) + abs(f.deriv(b)))
        assert r.rhs == pytest.approx(closed, abs=1e-12 * max(1.0, closed))
        r3 = cor3_bound(f, iv(a, b))
        assert r3.rhs == pytest.approx(closed, abs=1e-14)


# -- second family ---------------------------------------------------------------


def test_th2_square_identity_p2():
    r = th2_bound(power(2, 0, 1), iv(0, 1, 0.5), IDENTITY, p=2.0)
    assert r.lhs == pytest.approx(1 / 6, abs=1e-12)
    closed = (1.0 / 3.0) ** 0.5 * (0.25 * 0.5 ** 0.5 + 0.25 * 2.5 ** 0.5)
    assert r.rhs == pytest.approx(closed, abs=1e-12)
    assert r.holds


def test_th2_bad_exponent():
    f = power(2, 0, 1)
    for p in (1.0, 0.5, None):
        with pytest.raises(BadExponent):
            th2_bound(f, iv(0, 1, 0.5), IDENTITY, p=p)


def test_th2_identity_matches_eq111():
    rng = random.Random(13)
    for _ in range(20):
        a = -1.0 + 2.0 * rng.random()
        b = a + 0.4 + 1.5 * rng.random()
        x = a + rng.random() * (b - a)
        p = 1.2 + 3.0 * rng.random()
        f = power(rng.choice([2, 3]), a, b)
        r1 = th2_bound(f, iv(a, b, x), IDENTITY, p=p)
        r2 = background_bounds(f, iv(a, b, x), "eq111", p=p)
        assert r1.rhs == pytest.approx(r2.rhs, abs=1e-12 * max(1.0, r2.rhs))
        assert r1.lhs == pytest.approx(r2.lhs, abs=1e-12)


@pytest.mark.parametrize("s", [0.25, 0.5, 0.75])
def test_th2_power_kernel_matches_eq112(s):
    rng = random.Random(int(s * 100))
    h = power_kernel(s)
    for _ in range(20):
        a = 0.2 + rng.random()
        b = a + 0.4 + rng.random()
        x = a + rng.random() * (b - a)
        p = 1.2 + 3.0 * rng.random()
        f = power(rng.choice([2, 3]), a, b)
        r1 = th2_bound(f, iv(a, b, x), h, p=p, tol=1e-13)
        r2 = background_bounds(f, iv(a, b, x), "eq112", p=p, s=s)
        assert r1.rhs == pytest.approx(r2.rhs, abs=1e-12 * max(1.0, r2.rhs))


def test_th2_specialization_endpoints():
    f = power(2, 0, 1)
    r = th2_specializations(f, iv(0, 1), IDENTITY, 2.0, "x=a")
    assert r.statement_id == "rem_xa"
    assert r.lhs == pytest.approx(2 / 3, abs=1e-12)
    assert r.rhs == pytest.approx(math.sqrt(2.0 / 3.0), abs=1e-12)
    r = th2_specializations(f, iv(0, 1), IDENTITY, 2.0, "x=b")
    assert r.statement_id == "rem_xb"
    assert r.lhs == pytest.approx(1 / 3, abs=1e-12)
    assert r.rhs == pytest.approx(math.sqrt(2.0 / 3.0), abs=1e-12)


def test_th2_specialization_midpoint_derivative_zero():
    f = from_callable(lambda u: (u - 0.5) ** 2, 0.0, 1.0, name="shifted-sq")
    r = th2_specializations(f, iv(0, 1), IDENTITY, 2.0, "mid_fprime_zero")
    assert r.statement_id == "rem_fprime0"
    assert r.lhs == pytest.approx(1 / 6, abs=1e-9)
    assert r.rhs == pytest.approx(0.25 * (1 / 3) ** 0.5 * 2.0 * (0.5) ** 0.5, abs=1e-9)
    assert r.holds
    # and it refuses functions whose midpoint derivative is not ~ 0
    with pytest.raises(HypothesisFailed):
        th2_specializations(power(2, 0, 1), iv(0, 1), IDENTITY, 2.0, "mid_fprime_zero")


def test_cor6_derived_and_printed_variants():
    f = power(2, 0, 1)
    r = cor6_bound(f, iv(0, 1, 0.5), p=2.0)
    derived = (1 / 3) ** 0.5 * (0.25 * 1.0 + 0.25 * 5.0 ** 0.5)
    printed = (1 / 3) ** 0.5 * 0.5 * 1.0
    assert r.rhs == pytest.approx(derived, abs=1e-12)
    assert r.extra["rhs_printed"] == pytest.approx(printed, abs=1e-12)
    rp = cor6_bound(f, iv(0, 1, 0.5), p=2.0, use_printed=True)
    assert rp.rhs == pytest.approx(printed, abs=1e-12)
    assert rp.extra["rhs_derived"] == pytest.approx(derived, abs=1e-12)


# -- third family ----------------------------------------------------------------


def test_th3_square_identity_q2():
    r = th3_bound(power(2, 0, 1), iv(0, 1, 0.5), IDENTITY, q=2.0)
    closed = 0.5 ** 0.5 * (0.25 * (1 / 6) ** 0.5 + 0.25 * (1 / 6 + 4 / 3) ** 0.5)
    assert r.rhs == pytest.approx(closed, abs=1e-12)
    assert r.lhs == pytest.approx(1 / 6, abs=1e-12)
    assert r.holds
    # identity kernel: statement factor equals the tighter 1/2 factor
    assert r.extra["rhs_half_factor"] == pytest.approx(r.rhs, abs=1e-10)


def test_th3_one_kernel_q2():
    r = th3_bound(power(2, 0, 1), iv(0, 1, 0.5), ONE, q=2.0)
    assert r.rhs == pytest.approx(0.25 + 0.25 * 5 ** 0.5, abs=1e-12)
    # the statement factor (= 1) is looser than the 1/2-variant
    assert r.extra["rhs_half_factor"] < r.rhs


def test_cor7_matches_identity_display():
    f = power(2, 0, 1)
    r = cor7_bound(f, iv(0, 1), IDENTITY, q=2.0)
    assert r.rhs == pytest.approx(0.2886751345948129, abs=1e-12)
    assert r.lhs == pytest.approx(1 / 6, abs=1e-12)
    r2 = rem_th3_identity_bound(f, iv(0, 1), q=2.0)
    assert r2.rhs == pytest.approx(r.rhs, abs=1e-12)


def test_rem_th3_identity_matches_cor7_on_grid():
    rng = random.Random(17)
    for _ in range(15):
        a = -1.0 + 2.0 * rng.random()
        b = a + 0.5 + rng.random()
        q = 1.3 + 2.5 * rng.random()
        f = power(rng.choice([2, 4]), a, b)
        r1 = cor7_bound(f, iv(a, b), IDENTITY, q=q)
        r2 = rem_th3_identity_bound(f, iv(a, b), q=q)
        assert r1.rhs == pytest.approx(r2.rhs, abs=1e-10 * max(1.0, r2.rhs))


def test_cor8_and_chained_bound():
    f = power(2, 0, 1)
    r = cor8_bound(f, iv(0, 1), q=2.0)
    assert r.rhs == pytest.approx(0.25 * (1.0 + 5 ** 0.5), abs=1e-12)
    assert r.extra["chain_rhs"] == pytest.approx(1.0, abs=1e-12)
    assert r.rhs <= r.extra["chain_rhs"] + 1e-12
    assert r.holds


# -- background ----------------------------------------------------------------


def test_eq109_square():
    r = background_bounds(power(2, 0, 1), iv(0, 1), "eq109")
    assert r.lhs == pytest.approx(1 / 6, abs=1e-12)
    assert r.rhs == pytest.approx(0.25, abs=1e-12)
    assert r.hypothesis_checks["abs_deriv_convex"]


def test_eq112_validates_s():
    with pytest.raises(BadExponent):
        background_bounds(power(2, 0, 1), iv(0, 1, 0.5), "eq112", p=2.0, s=1.5)


# -- cross-cutting properties -----------------------------------------------------


def test_monotone_looseness_under_kernel_domination():
    f = power(2, 0, 1)
    base = th1_bound(f, iv(0, 1, 0.3), IDENTITY).rhs
    for h in (power_kernel(0.25), power_kernel(0.5), power_kernel(0.75), ONE):
        assert th1_bound(f, iv(0, 1, 0.3), h).rhs >= base - 1e-12


def test_hadamard_double_inequality():
    cases = [
        power(2, 0, 1),
        power(4, -1, 1),
        exponent(-1, 1),
        reciprocal(1, 2),
    ]
    for f in cases:
        left, mid, right = hadamard_triple(f, f.domain)
        assert left <= mid + 1e-9
        assert mid <= right + 1e-9


def test_divergent_kernel_rejected_by_every_kernel_statement():
    f = power(2, 0, 1)
    for sid in ("th1", "cor1", "cor2", "th2", "rem_xa", "rem_xb", "rem_xmid", "th3", "cor7"):
        with pytest.raises(DivergentKernel):
            evaluate(sid, f, iv(0, 1, 0.5), h=GODUNOVA, exponent=2.0)


def test_hypothesis_failures_recorded_not_gating():
    # kernel t^2 dominates neither the identity nor keeps |f'| kernel-convex;
    # the report is still produced with the failures on record
    f = power(2, 0, 1)
    r = th1_bound(f, iv(0, 1, 0.5), power_general(2.0))
    assert not r.hypothesis_checks["h_dominates_identity"]
    assert not r.hypothesis_checks["abs_deriv_h_convex"]
    assert not r.hypotheses_ok
    # and with the hypotheses broken the bound actually fails here
    assert not r.holds


def test_validity_mini_sweep():
    kernels = (IDENTITY, power_kernel(0.5), ONE)
    fs = [power(2, 0, 1), exponent(0, 1)]
    for f in fs:
        for h in kernels:
            for x in (0.0, 0.25, 0.5, 0.9, 1.0):
                assert th1_bound(f, iv(0, 1, x), h).gap >= -1e-9
                for p in (1.5, 2.0, 3.0):
                    assert th2_bound(f, iv(0, 1, x), h, p=p).gap >= -1e-9
                    assert th3_bound(f, iv(0, 1, x), h, q=p).gap >= -1e-9


def test_evaluate_dispatch_fixed_kernel_mismatch():
    f = power(2, 0, 1)
    with pytest.raises(DomainViolation):
        evaluate("cor3", f, iv(0, 1), h=ONE)
    with pytest.raises(DomainViolation):
        evaluate("cor5", f, iv(0, 1, 0.5), h=IDENTITY, exponent=2.0)
    r = evaluate("cor5", f, iv(0, 1, 0.5), h=power_kernel(0.5), exponent=2.0)
    assert r.statement_id == "cor5"
