"""Exception types raised across the package."""


class UncertaintyLabError(ValueError):
    """Base class for validation failures."""


class DimensionError(UncertaintyLabError):
    pass


class NotHermitianError(UncertaintyLabError):
    pass


class NullVectorError(UncertaintyLabError):
    """Raised when a vector is too short to normalize."""


class NotNormalizedError(UncertaintyLabError):
    pass


class NotOrthogonalError(UncertaintyLabError):
    pass


class AlreadySaturatedError(UncertaintyLabError):
    """The state is annihilated by C -/+ iD, so no orthogonal partner is needed."""


class DegenerateStateError(UncertaintyLabError):
    """Both variances vanish (common eigenstate) where a ratio needs them."""


class GridError(UncertaintyLabError):
    """Grid too narrow, asymmetric, or otherwise unusable."""


class TruncationError(UncertaintyLabError):
    """A Fock-space state leaks onto the top truncated levels."""
