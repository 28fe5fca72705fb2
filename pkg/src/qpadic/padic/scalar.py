"""Exact scalars of Q_p with honest precision tracking.

A scalar is stored as p^shift * unit where the unit residue is known modulo
p^prec.  Relative precision decreases exactly when ultrametric cancellation
destroys digits; it is never guessed back.  Three states exist:

  * regular        -- residue is a unit mod p, valuation == shift exactly
  * zero at prec   -- all known digits vanished; |x| <= p^(-shift), nothing more
  * exact zero     -- constructed from the integer 0
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..errors import InsufficientPrecision, ZeroAtPrecisionError

INF = math.inf


def vp_int(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("vp of 0 is +inf")
    v = 0
    n = abs(n)
    while n % p == 0:
        v += 1
        n //= p
    return v


def vp_fraction(x: Fraction, p: int):
    """p-adic valuation of a rational; +inf for 0."""
    if x == 0:
        return INF
    return vp_int(x.numerator, p) - vp_int(x.denominator, p)


@dataclass(frozen=True, slots=True)
class Valuation:
    """Exact rational valuation, or +inf flagged as exact zero / zero-at-precision."""

    value: Fraction | float
    zero_at: Fraction | None = None  # absolute-precision floor when zero at precision

    @property
    def is_finite(self) -> bool:
        return self.value != INF

    @property
    def is_exact_zero(self) -> bool:
        return self.value == INF and self.zero_at is None

    @property
    def is_zero_at_precision(self) -> bool:
        return self.zero_at is not None

    def expect_finite(self) -> Fraction:
        if self.value == INF:
            if self.zero_at is not None:
                raise ZeroAtPrecisionError(self.zero_at)
            raise ZeroAtPrecisionError(INF)
        return self.value

    def __str__(self) -> str:
        if self.value == INF:
            return "+inf"
        return str(self.value)


def val_from_str(s: str) -> Fraction | float:
    return INF if s.strip() in ("+inf", "inf") else Fraction(s)


@dataclass(frozen=True, slots=True)
class PadicScalar:
    """p^shift * residue with residue known modulo p^prec.

    Invariants: either exact (the integer 0), or residue == 0 and prec == 0
    (zero at absolute precision `shift`), or 0 < residue < p^prec with
    residue % p != 0.
    """

    p: int
    shift: int
    residue: int
    prec: int
    exact: bool = False  # True only for the exact zero

    # -- constructors ------------------------------------------------------

    @staticmethod
    def exact_zero(p: int) -> "PadicScalar":
        return PadicScalar(p, 0, 0, 0, exact=True)

    @staticmethod
    def zero_at(p: int, abs_prec: int) -> "PadicScalar":
        return PadicScalar(p, abs_prec, 0, 0)

    @staticmethod
    def _make(p: int, shift: int, residue: int, prec: int) -> "PadicScalar":
        """Normalize an unreduced (shift, residue mod p^prec) pair."""
        if prec <= 0:
            return PadicScalar.zero_at(p, shift + max(prec, 0))
        residue %= p**prec
        if residue == 0:
            return PadicScalar.zero_at(p, shift + prec)
        v = vp_int(residue, p)
        if v:
            residue //= p**v
            return PadicScalar(p, shift + v, residue, prec - v)
        return PadicScalar(p, shift, residue, prec)

    @staticmethod
    def from_int(p: int, n: int, prec: int) -> "PadicScalar":
        if n == 0:
            return PadicScalar.exact_zero(p)
        v = vp_int(n, p)
        unit = (n // p**v) % p**prec
        return PadicScalar(p, v, unit, prec)

    @staticmethod
    def from_fraction(p: int, x: Fraction, prec: int) -> "PadicScalar":
        if x == 0:
            return PadicScalar.exact_zero(p)
        num, den = x.numerator, x.denominator
        va, vb = vp_int(num, p), vp_int(den, p)
        mod = p**prec
        unit = ((num // p**va) * pow(den // p**vb, -1, mod)) % mod
        return PadicScalar(p, va - vb, unit, prec)

    # -- state -------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        """Zero as far as the stored digits can tell (exact or at precision)."""
        return self.residue == 0

    @property
    def abs_prec(self) -> int | float:
        """x is known modulo p^abs_prec."""
        if self.exact:
            return INF
        return self.shift + self.prec

    def valuation(self) -> Valuation:
        if self.exact:
            return Valuation(INF)
        if self.residue == 0:
            return Valuation(INF, zero_at=Fraction(self.shift))
        return Valuation(Fraction(self.shift))

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "PadicScalar"):
        if self.p != other.p:
            raise ValueError("scalars over different primes")

    def add(self, other: "PadicScalar") -> "PadicScalar":
        self._check(other)
        if self.exact:
            return other
        if other.exact:
            return self
        p = self.p
        abs_out = min(self.abs_prec, other.abs_prec)
        if self.residue == 0 and other.residue == 0:
            return PadicScalar.zero_at(p, abs_out)
        m = min(
            (s.shift for s in (self, other) if s.residue != 0),
        )
        prec_out = abs_out - m
        if prec_out <= 0:
            return PadicScalar.zero_at(p, abs_out)
        r = 0
        for s in (self, other):
            if s.residue != 0:
                r += s.residue * p ** (s.shift - m)
        return PadicScalar._make(p, m, r, prec_out)

    def neg(self) -> "PadicScalar":
        if self.residue == 0:
            return self
        return PadicScalar(self.p, self.shift, self.p**self.prec - self.residue, self.prec)

    def sub(self, other: "PadicScalar") -> "PadicScalar":
        return self.add(other.neg())

    def mul(self, other: "PadicScalar") -> "PadicScalar":
        self._check(other)
        if self.exact or other.exact:
            return PadicScalar.exact_zero(self.p)
        if self.residue == 0 or other.residue == 0:
            # |xy| <= p^-(bound_x + v_y)
            return PadicScalar.zero_at(self.p, self.shift + other.shift)
        prec = min(self.prec, other.prec)
        r = (self.residue * other.residue) % self.p**prec
        return PadicScalar._make(self.p, self.shift + other.shift, r, prec)

    def mul_int(self, n: int) -> "PadicScalar":
        """Multiply by an exact integer."""
        if n == 0:
            return PadicScalar.exact_zero(self.p)
        if self.residue == 0:
            if self.exact:
                return self
            return PadicScalar.zero_at(self.p, self.shift + vp_int(n, self.p))
        v = vp_int(n, self.p)
        unit = (self.residue * (n // self.p**v)) % self.p**self.prec
        return PadicScalar._make(self.p, self.shift + v, unit, self.prec)

    def shift_by(self, k: int) -> "PadicScalar":
        """Multiply by the exact power p^k (k may be negative)."""
        if self.exact:
            return self
        return PadicScalar(self.p, self.shift + k, self.residue, self.prec)

    def inv(self) -> "PadicScalar":
        if self.residue == 0:
            raise ZeroDivisionError("exact zero") if self.exact else ZeroAtPrecisionError(self.shift)
        mod = self.p**self.prec
        return PadicScalar(self.p, -self.shift, pow(self.residue, -1, mod), self.prec)

    # -- introspection -------------------------------------------------------

    def digits(self) -> list[int]:
        """Base-p digits of the unit residue, lowest first (prec of them)."""
        out, r = [], self.residue
        for _ in range(self.prec):
            out.append(r % self.p)
            r //= self.p
        return out

    def as_fraction(self) -> Fraction:
        """The stored representative as an exact rational (not the full scalar)."""
        if self.residue == 0:
            return Fraction(0)
        return Fraction(self.residue) * Fraction(self.p) ** self.shift

    def eq_at_precision(self, other: "PadicScalar") -> bool:
        return self.sub(other).is_zero

    def __str__(self) -> str:
        if self.exact:
            return "0"
        if self.residue == 0:
            return f"O(p^{self.shift})"
        return f"{self.residue}*p^{self.shift} + O(p^{self.abs_prec})"


def require_known(v: Valuation) -> Fraction:
    """Unwrap a valuation that the caller needs to be finite and exact."""
    if v.value == INF and v.zero_at is not None:
        raise InsufficientPrecision(
            f"value is zero at absolute precision {v.zero_at}; increase the working precision"
        )
    return v.value
