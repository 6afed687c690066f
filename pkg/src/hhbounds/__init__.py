"""Numeric certification of trapezoid-type integral inequalities for
kernel-convex functions, with special-means cross-checks."""

from .bounds import (
    BoundReport,
    CERTIFY_TOL,
    STATEMENT_IDS,
    background_bounds,
    cor1_bound,
    cor2_bound,
    cor3_bound,
    cor4_bound,
    cor5_bound,
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
from .classes import (
    MembershipVerdict,
    test_membership,
    verify_inclusion_chain,
)
from .errors import (
    BadExponent,
    ClassRequiresKernel,
    ClassRequiresS,
    DegenerateInterval,
    DivergentKernel,
    DomainViolation,
    ExcludedExponent,
    HHBoundsError,
    HypothesisFailed,
    NegativeFunction,
    NonFinite,
)
from .funcat import (
    AbsDerivPower,
    FunctionSpec,
    Interval,
    affine,
    exponent,
    from_callable,
    parse_function,
    power,
    reciprocal,
)
from .hkernel import (
    GODUNOVA,
    HKernel,
    IDENTITY,
    MomentSet,
    ONE,
    check_dominates_identity,
    check_supermultiplicative,
    moments,
    parse_kernel,
    power_general,
    power_kernel,
)
from .means import MeanValue, mean, prop_bound
from .quadrature import DEFAULT_TOL, QuadratureResult, integrate, mean_value
from .sweep import SweepConfig, SweepResult, run_sweep

__version__ = "0.1.0"
