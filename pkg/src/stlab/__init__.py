"""Triangulations of cyclic polytopes and the higher Stasheff-Tamari orders."""
from .errors import (
    ArityError,
    DegeneratePolytopeError,
    IncompatibleError,
    InternalConsistencyError,
    InvalidElementError,
    NotApplicableError,
    NotATriangulationError,
    ResourceLimitError,
    StLabError,
)

__version__ = "0.1.0"
