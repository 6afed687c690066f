"""Special means of two positive reals and closed-form mean inequalities.

The five mean inequalities p301..p305 are evaluated entirely in closed
form (no quadrature); the test suite cross-checks them against the general
bound evaluators applied to x^n and 1/x with the identity kernel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .bounds import BoundReport, _make_report
from .errors import BadExponent, DomainViolation, ExcludedExponent

PROP_IDS = ("p301", "p302", "p303", "p304", "p305")

_KIND_ALIASES = {
    "quadratic": "K",
    "arithmetic": "A",
    "geometric": "G",
    "logarithmic": "L",
    "p_logarithmic": "L_p",
    "lp": "L_p",
}

# Relative threshold below which L and L_p switch to their a == b branch
# to avoid catastrophic cancellation.
_NEAR_EQUAL = 1e-12


@dataclass(frozen=True)
class MeanValue:
    kind: str
    a: float
    b: float
    value: float


def _canonical_kind(kind: str) -> str:
    k = kind.strip()
    k = _KIND_ALIASES.get(k.lower(), k)
    if k not in ("K", "A", "G", "L", "L_p"):
        raise DomainViolation(f"unknown mean kind {kind!r}")
    return k


def mean(kind: str, a: float, b: float, p: Optional[float] = None) -> float:
    """Closed-form value of one of the means K, A, G, L, L_p."""
    k = _canonical_kind(kind)
    if a < 0 or b < 0:
        raise DomainViolation(f"means are defined for nonnegative inputs, got ({a}, {b})")
    if k == "A":
        return 0.5 * (a + b)
    if k == "K":
        return math.sqrt(0.5 * (a * a + b * b))
    if a <= 0 or b <= 0:
        raise DomainViolation(f"{k} requires strictly positive inputs, got ({a}, {b})")
    near_equal = abs(b - a) < _NEAR_EQUAL * max(abs(a), abs(b))
    if k == "G":
        return math.sqrt(a * b)
    if k == "L":
        if near_equal:
            return a
        return (b - a) / (math.log(b) - math.log(a))
    # L_p
    if p is None:
        raise BadExponent("L_p requires an exponent p")
    if p in (-1.0, 0.0):
        raise ExcludedExponent(f"L_p is undefined for p = {p:g}")
    if near_equal:
        return a
    return ((b ** (p + 1) - a ** (p + 1)) / ((p + 1) * (b - a))) ** (1.0 / p)


def _lp_pow_p(a: float, b: float, p: float) -> float:
    """L_p(a, b)**p evaluated directly, avoiding the p-th root round trip."""
    if p in (-1.0, 0.0):
        raise ExcludedExponent(f"L_p is undefined for p = {p:g}")
    if abs(b - a) < _NEAR_EQUAL * max(abs(a), abs(b)):
        return a ** p
    return (b ** (p + 1) - a ** (p + 1)) / ((p + 1) * (b - a))


def _require_n(n) -> int:
    if n is None or (isinstance(n, float) and n != int(n)) or not isinstance(n, (int, float)):
        raise BadExponent(f"n must be an integer with |n| >= 1, got {n}")
    n = int(n)
    if abs(n) < 1:
        raise BadExponent(f"n must satisfy |n| >= 1, got {n}")
    if n == -1:
        raise ExcludedExponent("n = -1 needs the excluded mean L_{-1}")
    return n


def prop_bound(
    id: str,
    a: float,
    b: float,
    n: Optional[int] = None,
    q: Optional[float] = None,
) -> BoundReport:
    """Evaluate one of the closed-form mean inequalities p301..p305.

    p301, p303, p305 bound |A(a^n, b^n) - L_n^n(a, b)| for f(x) = x^n;
    p302, p304 bound |A(a^-1, b^-1) - 1/L(a, b)| for f(x) = 1/x (n is
    accepted and ignored there, since it does not enter the displayed
    inequality).
    """
    pid = id.strip().lower()
    if pid not in PROP_IDS:
        raise DomainViolation(f"unknown proposition id {id!r}")
    if not (0.0 < a < b):
        raise DomainViolation(f"propositions require 0 < a < b, got ({a}, {b})")

    A = mean("A", a, b)
    inputs = {"a": a, "b": b, "n": n, "q": q, "f": "", "h": "", "x": None, "exponent": None}

    if pid in ("p302", "p304"):
        lhs = abs(0.5 * (1.0 / a + 1.0 / b) - (math.log(b) - math.log(a)) / (b - a))
        K2 = 0.5 * (a * a + b * b)
        G4 = (a * b) ** 2
        if pid == "p302":
            rhs = (b - a) / 12.0 * (1.0 / (A * A) + 2.0 * K2 / G4)
        else:
            rhs = (b - a) / 8.0 * (2.0 * K2 / G4)
        inputs["f"] = "recip"
        return _make_report(pid, inputs, lhs, rhs, {}, 0.0)

    n = _require_n(n)
    inputs["n"] = n
    inputs["f"] = f"poly:{n}"
    lhs = abs(0.5 * (a ** n + b ** n) - _lp_pow_p(a, b, n))
    A_pow = 0.5 * (a ** (n - 1) + b ** (n - 1))  # A(a^{n-1}, b^{n-1})

    if pid == "p301":
        rhs = abs(n) * (b - a) / 12.0 * (A ** (n - 1) + 2.0 * A_pow)
        return _make_report(pid, inputs, lhs, rhs, {}, 0.0)
    if pid == "p303":
        rhs = (b - a) / 4.0 * abs(n) * A_pow
        return _make_report(pid, inputs, lhs, rhs, {}, 0.0)

    # p305
    if q is None or not q > 1:
        raise BadExponent(f"p305 requires q > 1, got {q}")
    q = float(q)
    inputs["q"] = q
    coeff = abs(n) * (b - a) * 2.0 ** (1.0 / q - 3.0) * 3.0 ** (-1.0 / q)
    Aq = A ** (q * (n - 1))
    rhs = coeff * (
        (0.5 * Aq + a ** (q * (n - 1))) ** (1.0 / q)
        + (0.5 * Aq + b ** (q * (n - 1))) ** (1.0 / q)
    )
    return _make_report(pid, inputs, lhs, rhs, {}, 0.0)
