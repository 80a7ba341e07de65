"""Exact computations for the hit problem over F2[x1, ..., xk]."""

from .algebra import Monomial, Polynomial, RingMap, apply_map, parse_monomial, parse_polynomial
from .solver import QuotientBasis, admissible_basis, hit_space, weight_quotient
from .weights import WeightVector, mu, weight_vector

__all__ = [
    "Monomial", "Polynomial", "RingMap", "apply_map", "parse_monomial", "parse_polynomial",
    "QuotientBasis", "admissible_basis", "hit_space", "weight_quotient",
    "WeightVector", "mu", "weight_vector",
]
__version__ = "0.1.0"
