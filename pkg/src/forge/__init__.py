"""Computational toolkit for cubic fourfolds containing rational surfaces over finite fields."""
from .algebra import Ideal, Polynomial, groebner_basis, saturate
from .congruences import classify_congruence, cubics_through, multisecant_system, recover_associated_surface
from .invariants import hilbert_data, sectional_genus, singular_scheme
from .maps import RationalMap
from .schemes import Parametrization, ProjectiveScheme

__version__ = "0.1.0"
