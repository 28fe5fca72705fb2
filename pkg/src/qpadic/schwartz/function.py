"""Locally constant, compactly supported functions on Q_p^d.

A function is a table over the cosets of p^n Z_p^d inside p^(-m) Z_p^d:
keys are d-tuples of integers in [0, p^(m+n)), the key K representing the
coset K/p^m + p^n Z_p^d.  Values outside the table are exactly zero.
Canonical form trims zero outer shells (minimal m) and merges cosets on
which the function is constant (minimal n, down to n = -m).
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from ..errors import FieldMismatch, WindowCapExceeded
from ..padic.element import CycloElement
from ..padic.field import CyclotomicField
from ..padic.scalar import INF, vp_fraction

TABLE_CAP_EXP = 22  # hard cap on d*(m+n); p^cap table entries would be runaway growth


class SchwartzFunction:
    __slots__ = ("field", "d", "m", "n", "table")

    def __init__(self, field: CyclotomicField, d: int, m: int, n: int, table: dict):
        if m + n < 0:
            raise ValueError("need m + n >= 0")
        if d * (m + n) > TABLE_CAP_EXP:
            raise WindowCapExceeded(f"table would need p^{d * (m + n)} entries")
        self.field = field
        self.d = d
        self.m = m
        self.n = n
        self.table = {k: v for k, v in table.items() if not v.is_zero}

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(field: CyclotomicField, d: int = 1) -> "SchwartzFunction":
        return SchwartzFunction(field, d, 0, 0, {})

    @staticmethod
    def indicator(field: CyclotomicField, d: int, scale: int, offset=None) -> "SchwartzFunction":
        """Characteristic function of offset + p^scale Z_p^d."""
        p = field.p
        offset = tuple(Fraction(x) for x in (offset or (0,) * d))
        m = -scale
        for x in offset:
            if x != 0:
                m = max(m, -_floor_val(vp_fraction(x, p)))
        n = scale
        modulus = p ** (m + n)
        key = tuple(_frac_mod(x, p, m, modulus) for x in offset)
        f = SchwartzFunction(field, d, m, n, {key: CycloElement.from_int(field, 1)})
        return f.canonical()

    # -- evaluation ----------------------------------------------------------

    def value_at(self, x) -> CycloElement:
        """Value at a rational point x (tuple of Fractions)."""
        p = self.field.p
        modulus = p ** (self.m + self.n)
        key = []
        for xi in x:
            k = _frac_mod(xi, p, self.m, modulus)
            if k is None:
                return CycloElement.zero(self.field)
            key.append(k)
        return self.table.get(tuple(key), CycloElement.zero(self.field))

    def keys_dense(self):
        p = self.field.p
        return itertools.product(range(p ** (self.m + self.n)), repeat=self.d)

    def point_of_key(self, key) -> tuple[Fraction, ...]:
        return tuple(key_point(k, self.field.p, self.m) for k in key)

    # -- canonical form ----------------------------------------------------------

    def canonical(self) -> "SchwartzFunction":
        p = self.field.p
        m, n, table = self.m, self.n, dict(self.table)
        if not table:
            return SchwartzFunction(self.field, self.d, 0, 0, {})
        # trim support: drop the outer shell while it is all zero
        while m + n > 0 and all(
            all(k % p == 0 for k in key) for key in table
        ):
            table = {tuple(k // p for k in key): v for key, v in table.items()}
            m -= 1
        # coarsen level: merge cosets while the function is constant across them
        while m + n > 0:
            mod_small = p ** (m + n - 1)
            merged: dict = {}
            ok = True
            for key in itertools.product(range(p ** (m + n)), repeat=self.d):
                val = table.get(key)
                small = tuple(k % mod_small for k in key)
                if small in merged:
                    prev = merged[small]
                    if val is None and prev is None:
                        continue
                    if val is None or prev is None or not val.equals(prev):
                        ok = False
                        break
                else:
                    merged[small] = val
            if not ok:
                break
            table = {k: v for k, v in merged.items() if v is not None}
            n -= 1
        return SchwartzFunction(self.field, self.d, m, n, table)

    # -- structure ----------------------------------------------------------------

    def equals(self, other: "SchwartzFunction") -> bool:
        if self.d != other.d or not self.field.same_as(other.field):
            return False
        a, b = self.canonical(), other.canonical()
        if (a.m, a.n) != (b.m, b.n):
            return False
        for key in set(a.table) | set(b.table):
            va = a.table.get(key)
            vb = b.table.get(key)
            if va is None or vb is None:
                if not (va or vb).is_zero:
                    return False
            elif not va.equals(vb):
                return False
        return True

    def negate_argument(self) -> "SchwartzFunction":
        """x |-> f(-x)."""
        modulus = self.field.p ** (self.m + self.n)
        table = {tuple((-k) % modulus for k in key): v for key, v in self.table.items()}
        return SchwartzFunction(self.field, self.d, self.m, self.n, table)

    def scale_values(self, s: CycloElement) -> "SchwartzFunction":
        return SchwartzFunction(
            self.field, self.d, self.m, self.n, {k: s * v for k, v in self.table.items()}
        )

    def __add__(self, other: "SchwartzFunction") -> "SchwartzFunction":
        if self.d != other.d:
            raise FieldMismatch("dimension mismatch")
        m = max(self.m, other.m)
        n = max(self.n, other.n)
        out: dict = {}
        p = self.field.p
        for src in (self, other):
            grow = p ** (m - src.m)
            reps = p ** (n - src.n)
            modulus = p ** (m + n)
            for key, v in src.table.items():
                base = tuple(k * grow for k in key)
                for bump in itertools.product(range(reps), repeat=self.d):
                    kk = tuple(
                        (b + t * p ** (m + src.n)) % modulus for b, t in zip(base, bump)
                    )
                    out[kk] = out[kk] + v if kk in out else v
        return SchwartzFunction(self.field, self.d, m, n, out).canonical()

    def sup_norm_valuation(self) -> Fraction | float:
        """-log_p of the sup norm: min over table values of their valuation."""
        best = INF
        for v in self.table.values():
            val = v.valuation().value
            if val < best:
                best = val
        return best

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "m": self.m,
            "n": self.n,
            "p": self.field.p,
            "N": self.field.N,
            "P": self.field.precision,
            "table": {
                ",".join(map(str, key)): value.to_json()["coeffs"]
                for key, value in sorted(self.table.items())
            },
        }

    @staticmethod
    def from_json(data: dict, field: CyclotomicField | None = None) -> "SchwartzFunction":
        fld = field or CyclotomicField(data["p"], data["N"], data["P"])
        table = {}
        for key_s, coeffs in data["table"].items():
            key = tuple(int(x) for x in key_s.split(","))
            table[key] = CycloElement.from_json(
                {"p": data["p"], "N": data["N"], "P": data["P"], "coeffs": coeffs}, fld
            )
        return SchwartzFunction(fld, data["d"], data["m"], data["n"], table)

    def __repr__(self) -> str:
        return (
            f"SchwartzFunction(d={self.d}, m={self.m}, n={self.n}, "
            f"{len(self.table)} nonzero cosets)"
        )


def _floor_val(v) -> int:
    if v == INF:
        return 0
    num, den = v.numerator, v.denominator
    return num // den


def key_point(k: int, p: int, m: int) -> Fraction:
    """The rational point k / p^m (m may be negative)."""
    return Fraction(k) / Fraction(p) ** m


def _frac_mod(x: Fraction, p: int, m: int, modulus: int) -> int | None:
    """key = x * p^m reduced mod modulus, or None when x is outside p^(-m) Z_p."""
    y = Fraction(x) * Fraction(p) ** m
    den = y.denominator
    if den % p == 0:
        return None
    return (y.numerator * pow(den, -1, modulus)) % modulus if modulus > 1 else 0
