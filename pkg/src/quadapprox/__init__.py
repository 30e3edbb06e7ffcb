"""Exact and certified tools for approximating complex algebraic numbers by quadratic ones."""

__version__ = "0.1.0"

from .algebraic import AlgebraicNumber, FieldElement, distance, weil_height
from .cmfield import is_quartic_cm, theorem_applicability
from .errors import DomainError, QuadApproxError, ReducibleError
from .normform import case2_constant, liouville_constant, norm_of_poly_at
from .poly import IntPolynomial, parse_poly
from .roots import isolate_roots, signature
from .search import search

__all__ = [
    "AlgebraicNumber",
    "FieldElement",
    "IntPolynomial",
    "DomainError",
    "QuadApproxError",
    "ReducibleError",
    "parse_poly",
    "isolate_roots",
    "signature",
    "distance",
    "weil_height",
    "norm_of_poly_at",
    "liouville_constant",
    "case2_constant",
    "search",
    "is_quartic_cm",
    "theorem_applicability",
]
