"""Schwartz functions on Q_p^d, the Schrödinger representation, and intertwiners."""

from .character import AdditiveCharacter
from .function import SchwartzFunction
from .heisenberg import HeisenbergElement, symplectic_form
from .operators import (
    NormGrowthPoint,
    check_intertwining,
    fourier,
    heisenberg_act,
    intertwine,
    norm_growth_family,
)
from .symplectic import SymplecticMatrix

__all__ = [
    "AdditiveCharacter",
    "HeisenbergElement",
    "NormGrowthPoint",
    "SchwartzFunction",
    "SymplecticMatrix",
    "check_intertwining",
    "fourier",
    "heisenberg_act",
    "intertwine",
    "norm_growth_family",
    "symplectic_form",
]
