"""Pointed Hopf algebras of dimension p^2 as exact structure constants."""

from .exactfield import FieldSpec, Scalar
from .hopfcore import HopfAlgebra
from .families import FamilyId, build

__all__ = ["FieldSpec", "Scalar", "HopfAlgebra", "FamilyId", "build"]
