"""Totally ramified cyclotomic extensions K_N = Q_p(zeta_{p^N}).

Elements live in the uniformizer basis 1, pi, ..., pi^(e-1) with pi = zeta - 1,
where the minimal polynomial of pi is the Eisenstein polynomial
E(T) = Phi_{p^N}(T + 1).
"""

from __future__ import annotations

import math
from fractions import Fraction

from ..errors import PrecisionOverflow
from .scalar import PadicScalar

MAX_RAMIFICATION = 1 << 14
MAX_PRECISION = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def cyclotomic_eisenstein(p: int, N: int) -> list[int]:
    """Coefficients (low to high) of Phi_{p^N}(T + 1).

    Phi_{p^N}(X) = sum_{j<p} X^(j*p^(N-1)); substitute X = T + 1 exactly.
    """
    pn1 = p ** (N - 1)
    e = pn1 * (p - 1)
    coeffs = [0] * (e + 1)
    for j in range(p):
        k = j * pn1
        for i in range(k + 1):
            coeffs[i] += math.comb(k, i)
    return coeffs


class CyclotomicField:
    """Q_p(zeta_{p^N}) at working precision P digits per coefficient unit."""

    def __init__(self, p: int, N: int, precision: int = 64):
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if N < 1:
            raise ValueError("N must be >= 1")
        if precision < 1:
            raise ValueError("precision must be >= 1")
        if precision > MAX_PRECISION:
            raise PrecisionOverflow(f"precision {precision} exceeds maximum {MAX_PRECISION}")
        e = p ** (N - 1) * (p - 1)
        if e > MAX_RAMIFICATION:
            raise PrecisionOverflow(f"ramification degree {e} exceeds maximum {MAX_RAMIFICATION}")
        self.p = p
        self.N = N
        self.precision = precision
        self.e = e
        self.eisenstein = cyclotomic_eisenstein(p, N)
        assert len(self.eisenstein) == e + 1 and self.eisenstein[e] == 1
        assert self.eisenstein[0] == p
        assert all(c % p == 0 for c in self.eisenstein[:e])
        # caches keyed by derived quantities; all values immutable
        self._emod_cache: dict[int, list[int]] = {}
        self._zeta_pows: dict[int, "object"] = {}
        self._pi_inv = None

    @property
    def uniformizer_valuation(self) -> Fraction:
        """lambda = v(zeta - 1) = 1 / (p^(N-1)(p-1))."""
        return Fraction(1, self.e)

    def same_as(self, other: "CyclotomicField") -> bool:
        return (self.p, self.N, self.precision) == (other.p, other.N, other.precision)

    def scalar_from_int(self, n: int) -> PadicScalar:
        return PadicScalar.from_int(self.p, n, self.precision)

    def scalar_from_fraction(self, x: Fraction) -> PadicScalar:
        return PadicScalar.from_fraction(self.p, x, self.precision)

    def eisenstein_mod(self, k: int) -> list[int]:
        """Non-leading Eisenstein coefficients reduced mod p^k (cached)."""
        tab = self._emod_cache.get(k)
        if tab is None:
            m = self.p**k
            tab = [c % m for c in self.eisenstein[: self.e]]
            self._emod_cache[k] = tab
        return tab

    def __repr__(self) -> str:
        return f"CyclotomicField(p={self.p}, N={self.N}, e={self.e}, precision={self.precision})"


def make_field(p: int, N: int, precision: int = 64) -> CyclotomicField:
    return CyclotomicField(p, N, precision)
