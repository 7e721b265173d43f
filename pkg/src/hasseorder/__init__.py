"""Exact maximal orders in cyclic division algebras over local fields.

Construct the maximal order of a cyclic division algebra over a truncated
local field, embed it into matrices over the unramified extension, and
mechanically verify the structure theory (Galois idempotents, the Milnor
square, graded-module decomposition, Witt-vector identities).
"""

from .errors import (CtxMismatchError, HasseOrderError, InternalError,
                     NotInvertibleError, ParameterError, ParseError,
                     PrecisionError, RepresentationError, ValidationError)
from . import algebra, ff, linalg, localring, modcat, tensor, witt
from .localring import base_ring, unramified

__version__ = "1.0.0"

__all__ = [
    "CtxMismatchError", "HasseOrderError", "InternalError",
    "NotInvertibleError", "ParameterError", "ParseError", "PrecisionError",
    "RepresentationError", "ValidationError",
    "algebra", "ff", "linalg", "localring", "modcat", "tensor", "witt",
    "base_ring", "unramified",
]
