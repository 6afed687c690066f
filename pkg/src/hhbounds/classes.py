"""Membership testers for convexity-type function classes.

Each class is defined by a pointwise inequality

    f(t*x + (1-t)*y)  <=  w1(t) f(x) + w2(t) f(y)

with class-specific weights (reversed for kernel-concavity).  Membership is
checked exhaustively over an (x, y, t) grid; a verdict of holds=True means
"no counterexample found at this resolution", never a proof.  The earliest
grid violation in (x, y, t) order is returned as the witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from .errors import (
    BadExponent,
    ClassRequiresKernel,
    ClassRequiresS,
    DomainViolation,
    HypothesisFailed,
    NegativeFunction,
)
from .hkernel import HKernel, check_dominates_identity

DEFAULT_GRID = 41
VIOLATION_TOL = 1e-9

CLASS_NAMES = (
    "convex",
    "godunova_levin",
    "p_class",
    "s_convex",
    "h_convex",
    "h_concave",
)

_ALIASES = {
    "q": "godunova_levin",
    "p": "p_class",
    "ks2": "s_convex",
    "sx": "h_convex",
    "sv": "h_concave",
}

# Classes whose definition requires f >= 0.
_NONNEG_CLASSES = frozenset({"godunova_levin", "p_class", "s_convex", "h_convex"})


@dataclass(frozen=True)
class MembershipVerdict:
    class_name: str
    holds: bool
    witness: Optional[Tuple[float, float, float]]
    resolution: Tuple[int, int, int]
    max_violation: float


@dataclass(frozen=True)
class InclusionChainReport:
    """Pointwise check of chord-bound <= kernel-bound domination."""

    holds: bool
    chord_min_slack: float
    kernel_min_slack: float
    max_of_min_slacks: float
    witness: Optional[Tuple[float, float, float]]
    resolution: Tuple[int, int, int]


def canonical_class_name(name: str) -> str:
    key = name.strip().lower()
    key = _ALIASES.get(key, key)
    if key not in CLASS_NAMES:
        raise DomainViolation(f"unknown class name {name!r}")
    return key


def _grids(grid) -> Tuple[int, int, int]:
    if isinstance(grid, int):
        if grid < 2:
            raise DomainViolation("grid must be at least 2")
        return (grid, grid, grid)
    nx, ny, nt = (int(g) for g in grid)
    if min(nx, ny, nt) < 2:
        raise DomainViolation("grid counts must be at least 2")
    return (nx, ny, nt)


def _t_grid(n: int, open_ends: bool) -> np.ndarray:
    if open_ends:
        return np.arange(1, n + 1, dtype=float) / (n + 1)
    return np.linspace(0.0, 1.0, n)


def _weights(class_name, h, s, ts):
    if class_name == "convex":
        return ts, 1.0 - ts
    if class_name == "godunova_levin":
        return 1.0 / ts, 1.0 / (1.0 - ts)
    if class_name == "p_class":
        return np.ones_like(ts), np.ones_like(ts)
    if class_name == "s_convex":
        return ts ** s, (1.0 - ts) ** s
    # h_convex / h_concave
    if isinstance(h, HKernel):
        return h.eval_array(ts), h.eval_array(1.0 - ts)
    arr = np.vectorize(h, otypes=[float])
    return arr(ts), arr(1.0 - ts)


def test_membership(
    f,
    class_name: str,
    h: Optional[Union[HKernel, callable]] = None,
    s: Optional[float] = None,
    grid=DEFAULT_GRID,
    tol: float = VIOLATION_TOL,
) -> MembershipVerdict:
    """Grid check of class membership for an evaluable f on its domain.

    f is anything exposing .domain (an Interval) and .eval_array; the
    function catalog entries and the |f'|^q wrappers both qualify.
    """
    name = canonical_class_name(class_name)
    if name in ("h_convex", "h_concave") and h is None:
        raise ClassRequiresKernel(f"class {name} requires a kernel h")
    if name == "s_convex":
        if s is None:
            raise ClassRequiresS("s_convex requires s")
        if not (0.0 < s <= 1.0):
            raise BadExponent(f"s must lie in (0, 1], got {s}")

    nx, ny, nt = _grids(grid)
    dom = f.domain
    xs = np.linspace(dom.a, dom.b, nx)
    ys = np.linspace(dom.a, dom.b, ny)
    open_t = name == "godunova_levin" or (
        name in ("h_convex", "h_concave")
        and isinstance(h, HKernel)
        and h.endpoint_singular
    )
    ts = _t_grid(nt, open_t)

    fx = f.eval_array(xs)
    fy = f.eval_array(ys)
    if name in _NONNEG_CLASSES:
        low = float(min(fx.min(), fy.min()))
        if low < -tol:
            raise NegativeFunction(
                f"class {name} requires a nonnegative function; min sampled value {low:g}"
            )

    w1, w2 = _weights(name, h, s, ts)
    # z[i, j, k] = t_k * x_i + (1 - t_k) * y_j
    z = ts[None, None, :] * xs[:, None, None] + (1.0 - ts)[None, None, :] * ys[None, :, None]
    fz = f.eval_array(z)
    bound = w1[None, None, :] * fx[:, None, None] + w2[None, None, :] * fy[None, :, None]
    viol = fz - bound if name != "h_concave" else bound - fz

    worst = float(np.max(viol))
    if worst > tol:
        mask = viol > tol
        i, j, k = (int(v) for v in np.argwhere(mask)[0])  # earliest in (x, y, t) order
        witness = (float(xs[i]), float(ys[j]), float(ts[k]))
        return MembershipVerdict(name, False, witness, (nx, ny, nt), worst)
    return MembershipVerdict(name, True, None, (nx, ny, nt), max(worst, 0.0))


# keep pytest from collecting the library function as a test
test_membership.__test__ = False


def verify_inclusion_chain(
    f,
    h: HKernel,
    grid=DEFAULT_GRID,
    tol: float = VIOLATION_TOL,
) -> InclusionChainReport:
    """Check, pointwise on a grid, that the chord bound of a nonnegative
    convex f sits below the kernel bound whenever h dominates the identity:

        f(ax + (1-a)y)  <=  a f(x) + (1-a) f(y)  <=  h(a) f(x) + h(1-a) f(y)
    """
    dom_check = check_dominates_identity(h)
    if not dom_check.holds:
        raise HypothesisFailed(
            f"kernel {getattr(h, 'label', h)!r} does not dominate the identity; "
            f"witness alpha={dom_check.witness[0]:g}"
        )

    nx, ny, nt = _grids(grid)
    dom = f.domain
    xs = np.linspace(dom.a, dom.b, nx)
    ys = np.linspace(dom.a, dom.b, ny)
    alphas = _t_grid(nt, open_ends=True)

    fx = f.eval_array(xs)
    fy = f.eval_array(ys)
    low = float(min(fx.min(), fy.min()))
    if low < -tol:
        raise NegativeFunction(
            f"inclusion chain requires a nonnegative function; min sampled value {low:g}"
        )

    ha = h.eval_array(alphas) if isinstance(h, HKernel) else np.vectorize(h)(alphas)
    hb = h.eval_array(1.0 - alphas) if isinstance(h, HKernel) else np.vectorize(h)(1.0 - alphas)

    z = alphas[None, None, :] * xs[:, None, None] + (1.0 - alphas)[None, None, :] * ys[None, :, None]
    fz = f.eval_array(z)
    chord = alphas[None, None, :] * fx[:, None, None] + (1.0 - alphas)[None, None, :] * fy[None, :, None]
    kernel_side = ha[None, None, :] * fx[:, None, None] + hb[None, None, :] * fy[None, :, None]

    chord_slack = chord - fz
    kernel_slack = kernel_side - chord
    chord_min = float(np.min(chord_slack))
    kernel_min = float(np.min(kernel_slack))
    holds = chord_min >= -tol and kernel_min >= -tol

    witness = None
    if not holds:
        bad = np.minimum(chord_slack, kernel_slack)
        i, j, k = (int(v) for v in np.argwhere(bad < -tol)[0])
        witness = (float(xs[i]), float(ys[j]), float(alphas[k]))
    return InclusionChainReport(
        holds=holds,
        chord_min_slack=chord_min,
        kernel_min_slack=kernel_min,
        max_of_min_slacks=max(chord_min, kernel_min),
        witness=witness,
        resolution=(nx, ny, nt),
    )
