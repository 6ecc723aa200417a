"""Exception types shared across the package."""


class TreeHeckeError(Exception):
    """Base class for all package errors."""


class NonUnit(TreeHeckeError):
    """Inversion was requested for an element of positive valuation."""


class ZeroSubstitution(TreeHeckeError):
    """Substituting 0 into a Laurent polynomial with negative exponents."""


class InsufficientPrecision(TreeHeckeError):
    """A coefficient outside the tracked precision window was needed."""


class TraceNotZero(TreeHeckeError):
    """A trace-zero element was required."""


class RadiusExceeded(TreeHeckeError):
    """Tree generation past the configured radius was requested."""


class BudgetExceeded(TreeHeckeError):
    """An enumeration grew past the configured element budget."""


class NotNormOne(TreeHeckeError):
    """A norm-one series element was required."""


class CertificateFailure(TreeHeckeError):
    """An ideal-membership certificate could not be constructed."""


class NonIntegralCoefficient(TreeHeckeError):
    """Clearing denominators produced a non-integral coefficient."""


class InterpolationDegreeExceeded(TreeHeckeError):
    """An interpolated polynomial exceeded its declared degree bound."""


class UsageError(TreeHeckeError):
    """Bad command-line arguments or configuration."""
