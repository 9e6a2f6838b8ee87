"""Exact computations with Whittaker pairs, their enveloping algebras and modules."""

from .linalg import SparseMatrix, kernel_basis, rank, solve
from .presentations import LiePresentation, TruncationOverflow, catalog, jacobi_check, parse_presentation
from .pbw import LeftIdealQuotient, PBWAlgebra, UEAElement, normalize
from .structure import Character, lower_central_series, quasi_nilpotent_check, whittaker_pair_check

__all__ = [
    "Character", "LeftIdealQuotient", "LiePresentation", "PBWAlgebra", "SparseMatrix", "TruncationOverflow",
    "UEAElement", "catalog", "jacobi_check", "kernel_basis", "lower_central_series", "normalize",
    "parse_presentation", "quasi_nilpotent_check", "rank", "solve", "whittaker_pair_check",
]
