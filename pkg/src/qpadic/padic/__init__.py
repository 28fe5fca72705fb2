"""Exact arithmetic in Q_p and its p-power cyclotomic extensions."""

from .element import CycloElement, embed_up, parse_element, zeta_pow
from .field import CyclotomicField, make_field
from .resultant import resultant_int, valuation_by_resultant
from .scalar import INF, PadicScalar, Valuation, vp_fraction, vp_int

__all__ = [
    "CycloElement",
    "CyclotomicField",
    "INF",
    "PadicScalar",
    "Valuation",
    "embed_up",
    "make_field",
    "parse_element",
    "resultant_int",
    "valuation_by_resultant",
    "vp_fraction",
    "vp_int",
    "zeta_pow",
]
