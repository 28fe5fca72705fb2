"""Smooth additive characters of Q_p valued in a cyclotomic field.

The base character psi has kernel exactly Z_p: psi(a / p^l mod Z_p) equals
zeta_{p^l}^a, realized inside K_N through zeta_{p^l} = zeta_{p^N}^(p^(N-l)).
A conductor shift c turns it into x |-> psi(c x).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import FieldTooSmall
from ..padic.element import CycloElement, zeta_pow
from ..padic.field import CyclotomicField
from ..padic.scalar import vp_int


@dataclass(frozen=True)
class AdditiveCharacter:
    field: CyclotomicField
    shift: Fraction = Fraction(1)

    def __post_init__(self):
        if self.shift == 0:
            raise ValueError("character shift must be nonzero (character would be trivial)")

    def required_level(self, x: Fraction) -> int:
        """Conductor exponent l with psi(shift * x) a p^l-th root of unity."""
        r = self.shift * x
        if r == 0:
            return 0
        l = vp_int(r.denominator, self.field.p) - vp_int(r.numerator, self.field.p)
        return max(0, l)

    def __call__(self, x: Fraction) -> CycloElement:
        fld = self.field
        p = fld.p
        r = self.shift * Fraction(x)
        if r == 0:
            return zeta_pow(fld, 0)
        num, den = r.numerator, r.denominator
        l = vp_int(den, p) - vp_int(num, p)
        if l <= 0:
            return zeta_pow(fld, 0)
        if l > fld.N:
            raise FieldTooSmall(l, fld.N)
        unit_den = den // p**l  # den = p^l * unit_den with unit_den prime to p
        c = (num * pow(unit_den, -1, p**l)) % p**l
        return zeta_pow(fld, c * p ** (fld.N - l))
