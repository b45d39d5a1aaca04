"""Exact computations with Demazure operators, nil-Hecke algebras and
Demazure envelopes of rings with a Weyl group action."""

from .ambient import QuotientAlgebra, SymAlgebra, TorusSymAlgebra, Window, make_ring, sphere_algebra
from .centralizer import centralizer, centralizer_sl2, centralizer_sl3, sphere_counterexample
from .envelope import (
    SpanBasis,
    check_sign_in_cap,
    counit_localization_check,
    envelope_invariants,
    envelope_window,
    recipe_equality,
    torsion_check,
)
from .expr import parse_expr
from .nilhecke import (
    ExactnessError,
    NilHeckeElem,
    demazure_simple,
    demazure_w0_direct,
    demazure_word,
    nilhecke_act,
)
from .polyalg import MixedElem, PolyElem, RatElem
from .rootsys import RootSystem, UnsupportedCartanDatum, root_system

__version__ = "0.1.0"

__all__ = [
    "QuotientAlgebra", "SymAlgebra", "TorusSymAlgebra", "Window", "make_ring", "sphere_algebra",
    "centralizer", "centralizer_sl2", "centralizer_sl3", "sphere_counterexample",
    "SpanBasis", "check_sign_in_cap", "counit_localization_check", "envelope_invariants", "envelope_window",
    "recipe_equality", "torsion_check", "parse_expr",
    "ExactnessError", "NilHeckeElem", "demazure_simple", "demazure_w0_direct", "demazure_word", "nilhecke_act",
    "MixedElem", "PolyElem", "RatElem", "RootSystem", "UnsupportedCartanDatum", "root_system",
]
