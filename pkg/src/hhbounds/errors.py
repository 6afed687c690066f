"""Exception types shared across the package."""


class HHBoundsError(Exception):
    """Base class for every error raised by this package."""


class DomainViolation(HHBoundsError, ValueError):
    """An argument lies outside the domain it is required to be in."""


class DegenerateInterval(DomainViolation):
    """Interval endpoints coincide where a < b is required."""


class NonFinite(HHBoundsError, ArithmeticError):
    """An integrand returned NaN or infinity at an interior node."""


class DivergentKernel(HHBoundsError, ArithmeticError):
    """A kernel whose required moment integrals do not converge was passed
    to a bound evaluator; no finite bound can be certified."""


class BadExponent(HHBoundsError, ValueError):
    """An exponent parameter violates its constraint (p > 1, s in (0,1], ...)."""


class ExcludedExponent(BadExponent):
    """An exponent value excluded by a closed-form definition (e.g. -1, 0
    for the p-logarithmic mean)."""


class HypothesisFailed(HHBoundsError):
    """A hard hypothesis required before evaluation can proceed does not hold."""


class ClassRequiresKernel(HHBoundsError, ValueError):
    """Kernel-convexity membership test called without a kernel."""


class ClassRequiresS(HHBoundsError, ValueError):
    """s-convexity membership test called without s."""


class NegativeFunction(HHBoundsError, ValueError):
    """A class that requires nonnegative functions was given a negative one."""
