"""Tangles, tangle matroids and breadth-preserving minor reduction for small matroids."""
from .errors import (
    DomainError,
    InvariantError,
    PreconditionError,
    ResourceCapError,
    StructuralError,
    TanglekitError,
)
from .matroid import Matroid

__all__ = [
    "Matroid",
    "TanglekitError",
    "StructuralError",
    "PreconditionError",
    "DomainError",
    "ResourceCapError",
    "InvariantError",
]
