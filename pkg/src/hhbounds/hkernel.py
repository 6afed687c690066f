"""Kernel catalog with property checks and moment integrals.

Every bound evaluator is parameterized by four moments of the kernel h on
the unit interval: the integrals of h(t), h(1-t), h((1-t)t) and h((1-t)^2).
Moments are computed by adaptive quadrature and memoized per (kernel, tol);
entries whose estimate cannot be pushed below tolerance come back with
``converged=False`` so divergent kernels (h(t)=1/t and friends) are flagged
instead of silently capped.

Property checks (supermultiplicativity, domination of the identity) are
sampling-based: holds=True means "no counterexample found at resolution".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Union

import numpy as np

from .errors import BadExponent, DomainViolation
from .quadrature import DEFAULT_TOL, QuadratureResult, integrate

PROPERTY_GRID = 1001

_KINDS = ("identity", "power", "one", "godunova", "power_general")


@dataclass(frozen=True)
class HKernel:
    """A kernel h on (0, 1] with a tolerance for its property checks."""

    kind: str
    param: Optional[float] = None
    tol: float = 1e-9

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DomainViolation(f"unknown kernel kind {self.kind!r}")
        if self.kind == "power":
            if self.param is None or not self.param > 0:
                raise BadExponent(f"power kernel requires s > 0, got {self.param}")
        if self.kind == "power_general" and self.param is None:
            raise BadExponent("power_general kernel requires an exponent k")
        if not self.tol > 0:
            raise DomainViolation("kernel tol must be positive")

    @property
    def label(self) -> str:
        if self.kind == "identity":
            return "id"
        if self.kind == "one":
            return "one"
        if self.kind == "godunova":
            return "godunova"
        if self.kind == "power":
            return f"power:{self.param:g}"
        return f"powk:{self.param:g}"

    @property
    def endpoint_singular(self) -> bool:
        """True when h(t) -> inf as t -> 0+."""
        return self.kind == "godunova" or (
            self.kind == "power_general" and self.param < 0
        )

    def eval(self, t: float) -> float:
        if self.kind == "identity":
            return t
        if self.kind == "one":
            return 1.0
        if self.kind == "godunova":
            return math.inf if t == 0.0 else 1.0 / t
        # power / power_general
        if t == 0.0:
            if self.param > 0:
                return 0.0
            return 1.0 if self.param == 0 else math.inf
        return t ** self.param

    __call__ = eval

    def eval_array(self, ts: np.ndarray) -> np.ndarray:
        ts = np.asarray(ts, dtype=float)
        if self.kind == "identity":
            return ts.copy()
        if self.kind == "one":
            return np.ones_like(ts)
        if self.kind == "godunova":
            with np.errstate(divide="ignore"):
                return 1.0 / ts
        with np.errstate(divide="ignore"):
            return ts ** self.param


# Shared catalog instances used by evaluators that fix the kernel.
IDENTITY = HKernel("identity")
ONE = HKernel("one")
GODUNOVA = HKernel("godunova")


def power_kernel(s: float) -> HKernel:
    return HKernel("power", float(s))


def power_general(k: float) -> HKernel:
    return HKernel("power_general", float(k))


def parse_kernel(spec: str) -> HKernel:
    """Parse the textual kernel syntax: id, power:s, one, godunova, powk:k."""
    spec = spec.strip()
    if spec == "id":
        return IDENTITY
    if spec == "one":
        return ONE
    if spec == "godunova":
        return GODUNOVA
    if spec.startswith("power:"):
        try:
            return power_kernel(float(spec[len("power:"):]))
        except ValueError:
            raise BadExponent(f"bad kernel exponent in {spec!r}") from None
    if spec.startswith("powk:"):
        try:
            return power_general(float(spec[len("powk:"):]))
        except ValueError:
            raise BadExponent(f"bad kernel exponent in {spec!r}") from None
    raise DomainViolation(f"unknown kernel spec {spec!r}")


@dataclass(frozen=True)
class MomentSet:
    """The four kernel moments on [0, 1] used by the bound evaluators."""

    m_t: QuadratureResult      # integral of h(t)
    m_1mt: QuadratureResult    # integral of h(1-t)
    m_prod: QuadratureResult   # integral of h((1-t)t), also h(t-t^2)
    m_sq: QuadratureResult     # integral of h((1-t)^2)

    @property
    def all_converged(self) -> bool:
        return (
            self.m_t.converged
            and self.m_1mt.converged
            and self.m_prod.converged
            and self.m_sq.converged
        )

    def as_dict(self) -> dict:
        return {
            "m_t": self.m_t,
            "m_1mt": self.m_1mt,
            "m_prod": self.m_prod,
            "m_sq": self.m_sq,
        }


@lru_cache(maxsize=None)
def moments(h: HKernel, tol: float = DEFAULT_TOL) -> MomentSet:
    """Compute (and memoize) the four moments of h by adaptive quadrature."""
    return MomentSet(
        m_t=integrate(h.eval, 0.0, 1.0, tol),
        m_1mt=integrate(lambda t: h.eval(1.0 - t), 0.0, 1.0, tol),
        m_prod=integrate(lambda t: h.eval((1.0 - t) * t), 0.0, 1.0, tol),
        m_sq=integrate(lambda t: h.eval((1.0 - t) ** 2), 0.0, 1.0, tol),
    )


@dataclass(frozen=True)
class PropertyCheck:
    """Outcome of a sampled kernel property check."""

    holds: bool
    witness: Optional[tuple] = None
    max_violation: float = 0.0


def _kernel_fn(h: Union[HKernel, Callable[[float], float]]):
    if isinstance(h, HKernel):
        return h.eval_array, h.tol
    def arr(ts: np.ndarray) -> np.ndarray:
        ts = np.asarray(ts, dtype=float)
        try:
            out = np.asarray(h(ts), dtype=float)
            if out.shape == ts.shape:
                return out
        except (TypeError, ValueError):
            pass
        return np.array([float(h(float(t))) for t in ts.ravel()]).reshape(ts.shape)
    return arr, 1e-9


def check_supermultiplicative(
    h: Union[HKernel, Callable[[float], float]], grid: int = PROPERTY_GRID
) -> PropertyCheck:
    """Sample h(xy) >= h(x)h(y) on a grid over (0, 1]^2.

    The witness, when the check fails, is the pair with the largest
    violation h(x)h(y) - h(xy).
    """
    if grid < 2:
        raise DomainViolation("grid must be at least 2")
    fn, tol = _kernel_fn(h)
    xs = np.arange(1, grid + 1, dtype=float) / grid  # (0, 1]
    hx = fn(xs)
    prod = np.outer(hx, hx)
    hxy = fn(np.outer(xs, xs))
    viol = prod - hxy
    idx = np.unravel_index(int(np.argmax(viol)), viol.shape)
    worst = float(viol[idx])
    if worst > tol:
        return PropertyCheck(False, (float(xs[idx[0]]), float(xs[idx[1]])), worst)
    return PropertyCheck(True, None, max(worst, 0.0))


def check_dominates_identity(
    h: Union[HKernel, Callable[[float], float]], grid: int = PROPERTY_GRID
) -> PropertyCheck:
    """Sample h(alpha) >= alpha at grid points of (0, 1).

    The witness, when the check fails, is the alpha with the largest
    deficit alpha - h(alpha).
    """
    if grid < 2:
        raise DomainViolation("grid must be at least 2")
    fn, tol = _kernel_fn(h)
    alphas = np.arange(1, grid + 1, dtype=float) / (grid + 1)  # open (0, 1)
    viol = alphas - fn(alphas)
    i = int(np.argmax(viol))
    worst = float(viol[i])
    if worst > tol:
        return PropertyCheck(False, (float(alphas[i]),), worst)
    return PropertyCheck(True, None, max(worst, 0.0))
