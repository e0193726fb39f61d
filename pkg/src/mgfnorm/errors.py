"""Exception types shared across the package."""


class MGFNormError(Exception):
    """Base class for all package-specific errors."""


class SingularCovariance(MGFNormError):
    """Sample covariance is (numerically) singular.

    Raised when the smallest eigenvalue of S is <= tol * largest eigenvalue.
    Usually means n < d+1 or collinear data.
    """


class GammaTooSmall(MGFNormError, ValueError):
    """Weight parameter gamma below the domain required by the statistic."""


class BetaTooSmall(MGFNormError, ValueError):
    """Weight parameter beta below the domain required by the statistic."""


class DimensionError(MGFNormError, ValueError):
    """Input dimension incompatible with the requested operation."""


# The covariance-kernel entry point advertises this name.
DimensionMismatch = DimensionError


class SampleTooLarge(MGFNormError, ValueError):
    """Sample size exceeds the configured cost cap for an O(n^4) statistic."""


class SeriesNonConvergence(MGFNormError, ArithmeticError):
    """A series evaluation failed to converge within its iteration budget."""


class InvalidSpec(MGFNormError, ValueError):
    """Malformed or out-of-domain sampling-distribution specification."""


class MGFNotFinite(MGFNormError, ValueError):
    """The requested law has no finite moment generating function."""
