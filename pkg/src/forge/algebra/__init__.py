"""Exact arithmetic over GF(p): polynomials, Groebner bases, ideals and zero-dimensional solving."""
from .field import DEFAULT_PRIME, FieldElement
from .groebner import CapacityError, GroebnerBasis, groebner_basis, normal_form
from .ideal import Ideal, eliminate, saturate, saturate_irrelevant
from .monomials import GREVLEX, MonomialOrder, elimination_order
from .poly import Polynomial
from .univariate import univariate_roots

__all__ = ["DEFAULT_PRIME", "FieldElement", "CapacityError", "GroebnerBasis", "groebner_basis", "normal_form",
           "Ideal", "eliminate", "saturate", "saturate_irrelevant", "GREVLEX", "MonomialOrder",
           "elimination_order", "Polynomial", "univariate_roots"]
