"""Sylvester-Gallai geometries, chromatic colourings and their embeddings in finite projective spaces."""

from .errors import (
    BudgetExhausted,
    InvalidArguments,
    SylgalError,
    UnsupportedDimension,
    UnsupportedField,
    UnsupportedSize,
)
from .geometry import Geometry, dimension, is_k_sg, validate
from .galois import FiniteField, field_make, gf

__version__ = "0.1.0"

__all__ = [
    "BudgetExhausted", "InvalidArguments", "SylgalError", "UnsupportedDimension",
    "UnsupportedField", "UnsupportedSize", "Geometry", "dimension", "is_k_sg",
    "validate", "FiniteField", "field_make", "gf",
]
