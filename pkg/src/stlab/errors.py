"""Exception hierarchy shared by every module."""


class StLabError(ValueError):
    """Base class for all library errors."""


class ArityError(StLabError):
    """Tuple sizes do not fit the operation."""


class DegeneratePolytopeError(StLabError):
    """Too few vertices for the requested cyclic polytope."""


class InvalidElementError(StLabError):
    """A tuple lies outside the ground set an operation works over."""


class NotATriangulationError(StLabError):
    """A tuple collection does not encode a triangulation.

    ``reason`` names the failed property and ``witness`` holds an offending
    tuple or pair of tuples.
    """

    def __init__(self, message, reason=None, witness=None):
        super().__init__(message)
        self.reason = reason
        self.witness = witness


class IncompatibleError(StLabError):
    """Operands live over different (m, d)."""


class NotApplicableError(StLabError):
    """Operation is undefined for the given parity or parameters."""


class ResourceLimitError(StLabError):
    """An enumeration hit its element or time cap."""

    def __init__(self, message, partial_count=0):
        super().__init__(message)
        self.partial_count = partial_count


class InternalConsistencyError(RuntimeError):
    """A cross-check that cannot fail on valid input did fail."""
