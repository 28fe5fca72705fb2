"""Independent valuation oracle via integer resultants.

For a with integer-representable coefficients, Res(a(T), E(T)) equals the
field norm of a(pi) up to sign, so v(a) = v_p(Res) / e.  The resultant is
computed over Z with the subresultant PRS, entirely independent of the
pi-basis valuation formula.
"""

from __future__ import annotations

from fractions import Fraction

from .element import CycloElement
from .scalar import INF, Valuation, vp_int


def _deg(a: list[int]) -> int:
    d = len(a) - 1
    while d >= 0 and a[d] == 0:
        d -= 1
    return d


def _trim(a: list[int]) -> list[int]:
    d = _deg(a)
    return a[: d + 1] if d >= 0 else []


def _pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    """prem(a, b) = lc(b)^(deg a - deg b + 1) * a mod b, exact over Z."""
    da, db = _deg(a), _deg(b)
    lb = b[db]
    r = a[:]
    steps = da - db + 1
    used = 0
    while True:
        dr = _deg(r)
        if dr < db:
            break
        r = [lb * c for c in r]
        used += 1
        lead = r[dr]
        for i in range(db + 1):
            r[dr - db + i] -= lead // lb * b[i]
        r = _trim(r)
        if not r:
            break
    # pad remaining lc(b) powers so the standard subresultant formulas apply
    if used < steps:
        f = lb ** (steps - used)
        r = [f * c for c in r]
    return r


def resultant_int(a: list[int], b: list[int]) -> int:
    """Exact resultant of two integer polynomials (low-to-high coefficients)."""
    a, b = _trim(list(a)), _trim(list(b))
    da, db = _deg(a), _deg(b)
    if da < 0 or db < 0:
        return 0
    if da == 0:
        return a[0] ** db
    if db == 0:
        return b[0] ** da
    s = 1
    if da < db:
        a, b = b, a
        da, db = db, da
        if da % 2 and db % 2:
            s = -s
    g, h = 1, 1
    while True:
        da, db = _deg(a), _deg(b)
        d = da - db
        if da % 2 and db % 2:
            s = -s
        r = _pseudo_rem(a, b)
        a, b = b, [c // (g * h**d) for c in r]
        g = a[_deg(a)]
        if d >= 1:
            h = g**d // h ** (d - 1)
        if not b:
            return 0
        if _deg(b) == 0:
            da = _deg(a)
            res = b[0] ** da // (h ** (da - 1)) if da >= 1 else b[0]
            return s * res


def _int_coefficients(a: CycloElement) -> list[int]:
    """Stored integer representatives; zero-at-precision coefficients become 0."""
    out = []
    for c in a.coeffs:
        if c.residue == 0:
            out.append(0)
        else:
            if c.shift < 0:
                raise ValueError("resultant oracle expects p-integral coefficients")
            out.append(c.residue * a.field.p**c.shift)
    return out


def valuation_by_resultant(a: CycloElement) -> Valuation:
    """v(a) = v_p(Res(a(T), E(T))) / e for integer-representable a.

    Works on the stored representatives, so it is faithful whenever
    e * v(a) stays below the working precision (the representative and the
    true value agree modulo p^P coefficientwise).
    """
    ints = _int_coefficients(a)
    if all(n == 0 for n in ints):
        return Valuation(INF)
    res = resultant_int(ints, a.field.eisenstein)
    return Valuation(Fraction(vp_int(res, a.field.p), a.field.e))
