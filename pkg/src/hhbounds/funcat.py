"""Catalog of test functions with first derivatives.

Catalog entries (integer powers, the reciprocal, the exponential, affine
maps) carry closed-form derivatives; user-supplied closures fall back to a
second-order central difference, switching to one-sided stencils at the
interval endpoints so the closure is never sampled outside its domain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from .errors import DegenerateInterval, DomainViolation


@dataclass(frozen=True)
class Interval:
    """Ordered pair a < b, optionally with an interior evaluation point x."""

    a: float
    b: float
    x: Optional[float] = None

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise DomainViolation("interval endpoints must be finite")
        if self.a == self.b:
            raise DegenerateInterval(f"degenerate interval [{self.a}, {self.b}]")
        if self.a > self.b:
            raise DomainViolation(f"interval out of order: {self.a} > {self.b}")
        if self.x is not None and not (self.a <= self.x <= self.b):
            raise DomainViolation(
                f"evaluation point x={self.x} outside [{self.a}, {self.b}]"
            )

    @property
    def mid(self) -> float:
        return 0.5 * (self.a + self.b)

    @property
    def width(self) -> float:
        return self.b - self.a

    def _slack(self) -> float:
        return 1e-12 * (abs(self.a) + abs(self.b) + 1.0)

    def contains(self, u: float) -> bool:
        s = self._slack()
        return self.a - s <= u <= self.b + s

    def with_x(self, x: float) -> "Interval":
        return replace(self, x=x)


_CATALOG_KINDS = ("power", "reciprocal", "exponent", "affine", "user")


@dataclass(frozen=True)
class FunctionSpec:
    """An evaluable function with its first derivative on a fixed interval."""

    kind: str
    domain: Interval
    n: Optional[int] = None
    c0: float = 0.0
    c1: float = 0.0
    fn: Optional[Callable[[float], float]] = None
    deriv_mode: str = "closed_form"  # or "central_difference"
    deriv_step: Optional[float] = None
    label: str = ""

    def __post_init__(self):
        if self.kind not in _CATALOG_KINDS:
            raise DomainViolation(f"unknown function kind {self.kind!r}")
        if self.kind == "power":
            if self.n is None or self.n != int(self.n):
                raise DomainViolation("power requires an integer exponent")
            if self.n < 0 and self.domain.a <= 0:
                raise DomainViolation(
                    f"power({self.n}) needs a strictly positive interval, got a={self.domain.a}"
                )
        if self.kind == "reciprocal" and self.domain.a <= 0:
            raise DomainViolation(
                f"reciprocal needs a strictly positive interval, got a={self.domain.a}"
            )
        if self.kind == "user" and self.fn is None:
            raise DomainViolation("user function requires a callable")
        if self.deriv_mode not in ("closed_form", "central_difference"):
            raise DomainViolation(f"unknown derivative mode {self.deriv_mode!r}")
        if self.kind == "user" and self.deriv_mode == "closed_form":
            object.__setattr__(self, "deriv_mode", "central_difference")
        if self.deriv_mode == "central_difference" and self.deriv_step is None:
            object.__setattr__(self, "deriv_step", 1e-6 * self.domain.width)
        if self.deriv_step is not None and self.deriv_step <= 0:
            raise DomainViolation("central-difference step must be positive")
        if not self.label:
            object.__setattr__(self, "label", self._default_label())

    def _default_label(self) -> str:
        if self.kind == "power":
            return f"poly:{self.n}"
        if self.kind == "reciprocal":
            return "recip"
        if self.kind == "exponent":
            return "exp"
        if self.kind == "affine":
            return f"affine:{self.c0:g},{self.c1:g}"
        return "user"

    # -- evaluation ---------------------------------------------------------

    def eval(self, u: float) -> float:
        if not self.domain.contains(u):
            raise DomainViolation(
                f"{self.label}: u={u} outside [{self.domain.a}, {self.domain.b}]"
            )
        return self._eval_unchecked(u)

    __call__ = eval

    def _eval_unchecked(self, u: float) -> float:
        if self.kind == "power":
            return u ** self.n
        if self.kind == "reciprocal":
            return 1.0 / u
        if self.kind == "exponent":
            return math.exp(u)
        if self.kind == "affine":
            return self.c0 + self.c1 * u
        return float(self.fn(u))

    def eval_array(self, us: np.ndarray) -> np.ndarray:
        """Vectorized evaluation on trusted in-domain grids (no domain check)."""
        us = np.asarray(us, dtype=float)
        if self.kind == "power":
            return us ** self.n
        if self.kind == "reciprocal":
            return 1.0 / us
        if self.kind == "exponent":
            return np.exp(us)
        if self.kind == "affine":
            return self.c0 + self.c1 * us
        try:
            out = np.asarray(self.fn(us), dtype=float)
            if out.shape == us.shape:
                return out
        except (TypeError, ValueError):
            pass
        flat = np.array([float(self.fn(float(u))) for u in us.ravel()])
        return flat.reshape(us.shape)

    # -- derivative ---------------------------------------------------------

    def deriv(self, u: float) -> float:
        if not self.domain.contains(u):
            raise DomainViolation(
                f"{self.label}: u={u} outside [{self.domain.a}, {self.domain.b}]"
            )
        if self.deriv_mode == "closed_form":
            return self._deriv_closed(u)
        return self._deriv_fd(u)

    def _deriv_closed(self, u: float) -> float:
        if self.kind == "power":
            if self.n == 0:
                return 0.0
            return self.n * u ** (self.n - 1)
        if self.kind == "reciprocal":
            return -1.0 / (u * u)
        if self.kind == "exponent":
            return math.exp(u)
        if self.kind == "affine":
            return self.c1
        raise DomainViolation("user functions have no closed-form derivative")

    def _deriv_fd(self, u: float) -> float:
        h = self.deriv_step
        a, b = self.domain.a, self.domain.b
        if u - h < a:
            # one-sided second-order stencil at the left edge
            return (
                -3.0 * self._eval_unchecked(u)
                + 4.0 * self._eval_unchecked(u + h)
                - self._eval_unchecked(u + 2.0 * h)
            ) / (2.0 * h)
        if u + h > b:
            return (
                3.0 * self._eval_unchecked(u)
                - 4.0 * self._eval_unchecked(u - h)
                + self._eval_unchecked(u - 2.0 * h)
            ) / (2.0 * h)
        return (self._eval_unchecked(u + h) - self._eval_unchecked(u - h)) / (2.0 * h)

    def deriv_array(self, us: np.ndarray) -> np.ndarray:
        us = np.asarray(us, dtype=float)
        if self.deriv_mode == "closed_form":
            if self.kind == "power":
                if self.n == 0:
                    return np.zeros_like(us)
                return self.n * us ** (self.n - 1)
            if self.kind == "reciprocal":
                return -1.0 / (us * us)
            if self.kind == "exponent":
                return np.exp(us)
            if self.kind == "affine":
                return np.full_like(us, self.c1)
        flat = np.array([self._deriv_fd(float(u)) for u in us.ravel()])
        return flat.reshape(us.shape)

    def with_central_difference(self, step: Optional[float] = None) -> "FunctionSpec":
        """Copy of this spec forced onto the finite-difference derivative."""
        return replace(
            self,
            deriv_mode="central_difference",
            deriv_step=step if step is not None else 1e-6 * self.domain.width,
        )


class AbsDerivPower:
    """|f'|^q of a FunctionSpec as an evaluable on a subinterval.

    This is the object whose kernel-convexity the bound evaluators test.
    """

    def __init__(self, f: FunctionSpec, q: float = 1.0, domain: Optional[Interval] = None):
        self.f = f
        self.q = float(q)
        self.domain = domain if domain is not None else f.domain
        self.label = f"|{f.label}'|^{self.q:g}"

    def eval(self, u: float) -> float:
        return abs(self.f.deriv(u)) ** self.q

    __call__ = eval

    def eval_array(self, us: np.ndarray) -> np.ndarray:
        return np.abs(self.f.deriv_array(us)) ** self.q


# -- constructors and textual syntax ----------------------------------------


def power(n: int, a: float, b: float, x: Optional[float] = None) -> FunctionSpec:
    return FunctionSpec("power", Interval(a, b, x), n=int(n))


def reciprocal(a: float, b: float, x: Optional[float] = None) -> FunctionSpec:
    return FunctionSpec("reciprocal", Interval(a, b, x))


def exponent(a: float, b: float, x: Optional[float] = None) -> FunctionSpec:
    return FunctionSpec("exponent", Interval(a, b, x))


def affine(c0: float, c1: float, a: float, b: float, x: Optional[float] = None) -> FunctionSpec:
    return FunctionSpec("affine", Interval(a, b, x), c0=float(c0), c1=float(c1))


def from_callable(
    fn: Callable[[float], float],
    a: float,
    b: float,
    x: Optional[float] = None,
    name: str = "user",
    deriv_step: Optional[float] = None,
) -> FunctionSpec:
    return FunctionSpec(
        "user",
        Interval(a, b, x),
        fn=fn,
        deriv_mode="central_difference",
        deriv_step=deriv_step,
        label=name,
    )


def parse_function(spec: str, a: float, b: float, x: Optional[float] = None) -> FunctionSpec:
    """Parse the textual function syntax: poly:n, recip, exp, affine:c0,c1."""
    spec = spec.strip()
    if spec == "recip":
        return reciprocal(a, b, x)
    if spec == "exp":
        return exponent(a, b, x)
    if spec.startswith("poly:"):
        body = spec[len("poly:"):]
        try:
            n = int(body)
        except ValueError:
            raise DomainViolation(f"poly exponent must be an integer, got {body!r}") from None
        return power(n, a, b, x)
    if spec.startswith("affine:"):
        body = spec[len("affine:"):]
        parts = body.split(",")
        if len(parts) != 2:
            raise DomainViolation(f"affine needs two coefficients, got {body!r}")
        try:
            c0, c1 = float(parts[0]), float(parts[1])
        except ValueError:
            raise DomainViolation(f"bad affine coefficients {body!r}") from None
        return affine(c0, c1, a, b, x)
    raise DomainViolation(f"unknown function spec {spec!r}")
