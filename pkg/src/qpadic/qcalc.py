"""q-analog arithmetic and the beta_p(n) valuation calculus.

Gaussian binomials are built from the q-Pascal identity; the beta function
governs the valuation of (zeta; zeta)_n through v = beta_p(n) / (p^(N-1)(p-1)).
All ">=" certifications against the irrational log_p(n) use directed rounding,
with an exact integer-powering fallback so a "true" verdict is a proof.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import FieldMismatch
from .padic.element import CycloElement
from .padic.field import CyclotomicField
from .padic.scalar import vp_int


# -- integer polynomials in q -------------------------------------------------

@dataclass(frozen=True)
class QPolynomial:
    """Integer polynomial in the indeterminate q, low-to-high coefficients."""

    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        d = len(self.coeffs) - 1
        while d >= 0 and self.coeffs[d] == 0:
            d -= 1
        return d

    def __add__(self, other: "QPolynomial") -> "QPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPolynomial(tuple(out))

    def __mul__(self, other: "QPolynomial") -> "QPolynomial":
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return QPolynomial(tuple(out))

    def shift(self, m: int) -> "QPolynomial":
        """Multiply by q^m."""
        return QPolynomial((0,) * m + self.coeffs)

    def divexact(self, other: "QPolynomial") -> "QPolynomial":
        """Exact polynomial division; raises if the division is not exact."""
        num = list(self.coeffs)
        dd = other.degree
        lead = other.coeffs[dd]
        dn = self.degree
        if dn < dd:
            raise ValueError("division is not exact")
        out = [0] * (dn - dd + 1)
        for k in range(dn - dd, -1, -1):
            c = num[k + dd]
            if c % lead:
                raise ValueError("division is not exact")
            q = c // lead
            out[k] = q
            for i in range(dd + 1):
                num[k + i] -= q * other.coeffs[i]
        if any(num[: dd + 1]) or any(num[dd + 1 :]):
            raise ValueError("division is not exact")
        return QPolynomial(tuple(out))

    def eval_int(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_element(self, q: CycloElement) -> CycloElement:
        acc = CycloElement.zero(q.field)
        for c in reversed(self.coeffs):
            acc = acc * q + CycloElement.from_int(q.field, c)
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, QPolynomial):
            return NotImplemented
        d = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (d - len(self.coeffs))
        b = other.coeffs + (0,) * (d - len(other.coeffs))
        return a == b

    def __hash__(self):
        d = self.degree
        return hash(self.coeffs[: d + 1])


QPOLY_ONE = QPolynomial((1,))
QPOLY_ZERO = QPolynomial((0,))

_qbinom_rows: list[list[QPolynomial]] = [[QPOLY_ONE]]


def q_binomial_poly(n: int, k: int) -> QPolynomial:
    """Gaussian binomial as an integer polynomial, by the q-Pascal recursion."""
    if n < 0 or k < 0:
        raise ValueError("n, k must be >= 0")
    if k > n:
        return QPOLY_ZERO
    while len(_qbinom_rows) <= n:
        m = len(_qbinom_rows)
        prev = _qbinom_rows[m - 1]
        row = []
        for t in range(m + 1):
            # C_q(m, t) = C_q(m-1, t) + q^(m-t) C_q(m-1, t-1)
            left = prev[t] if t < m else QPOLY_ZERO
            lo = prev[t - 1].shift(m - t) if t >= 1 else QPOLY_ZERO
            row.append(left + lo)
        _qbinom_rows.append(row)
    return _qbinom_rows[n][k]


def q_binomial_row(q: CycloElement, n: int, k_max: int) -> list[CycloElement]:
    """[C_q(n, k) for k = 0..k_max] via one value-level q-Pascal triangle pass."""
    fld = q.field
    one = CycloElement.from_int(fld, 1)
    zero = CycloElement.zero(fld)
    k_top = min(k_max, n)
    qpow = [one]
    for _ in range(n):
        qpow.append(qpow[-1] * q)
    row = [one]  # row for m = 0
    for m in range(1, n + 1):
        new = [one]
        top = min(m, k_top)
        for t in range(1, top + 1):
            left = row[t] if t < len(row) else zero
            lo = row[t - 1]
            new.append(left + qpow[m - t] * lo)
        row = new
    row += [zero] * (k_max - k_top)
    return row


def q_binomial_value(q: CycloElement, n: int, k: int) -> CycloElement:
    """C_q(n, k) evaluated at a field element."""
    if k < 0 or k > n:
        return CycloElement.zero(q.field)
    return q_binomial_row(q, n, k)[k]


# -- q-Pochhammer and the zeta-coefficients -----------------------------------

def q_pochhammer(a: CycloElement, q: CycloElement, n: int) -> CycloElement:
    """(a; q)_n = prod_{i<n} (1 - a q^i); the empty product is 1."""
    if a.field is not q.field and not a.field.same_as(q.field):
        raise FieldMismatch("q_pochhammer operands live in different fields")
    one = CycloElement.from_int(a.field, 1)
    acc = one
    aq = a
    for _ in range(n):
        acc = acc * (one - aq)
        aq = aq * q
    return acc


def zq_coefficient(zeta: CycloElement, q: CycloElement, k: int) -> CycloElement:
    """<zeta, q>_k = (zeta - 1)(zeta - q) ... (zeta - q^(k-1)); <zeta, q>_0 = 1."""
    return zq_coefficient_sequence(zeta, q, k)[k]


def zq_coefficient_sequence(zeta: CycloElement, q: CycloElement, K: int) -> list[CycloElement]:
    """All <zeta, q>_k for k = 0..K, computed incrementally."""
    if zeta.field is not q.field and not zeta.field.same_as(q.field):
        raise FieldMismatch("zq_coefficient operands live in different fields")
    fld = zeta.field
    out = [CycloElement.from_int(fld, 1)]
    qpow = CycloElement.from_int(fld, 1)
    for _ in range(K):
        out.append(out[-1] * (zeta - qpow))
        qpow = qpow * q
    return out


# -- beta and its certified bounds ---------------------------------------------

@dataclass(frozen=True)
class BetaValue:
    p: int
    n: int
    value: int


def beta(p: int, n: int) -> BetaValue:
    """beta_p(n) = sum_k p^k (floor(n/p^k) - floor(n/p^(k+1))), exact."""
    if n < 1:
        raise ValueError("n must be >= 1")
    total = 0
    pk = 1
    while pk <= n:
        total += pk * (n // pk - n // (pk * p))
        pk *= p
    return BetaValue(p, n, total)


def beta_range(p: int, n_max: int) -> np.ndarray:
    """beta_p(n) for n = 1..n_max as an int64 array (defining sum, vectorized)."""
    n = np.arange(1, n_max + 1, dtype=np.int64)
    acc = np.zeros_like(n)
    pk = 1
    while pk <= n_max:
        acc += pk * (n // pk - n // (pk * p))
        pk *= p
    return acc


def log_p_bounds(n: int, p: int, denom: int = 64) -> tuple[Fraction, Fraction]:
    """Exact rational bounds lo <= log_p(n) <= hi with denominator `denom`."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return Fraction(0), Fraction(0)
    nd = n**denom
    k = int(denom * math.log(n, p))  # float guess, then exact adjustment
    while p**k > nd:
        k -= 1
    while p ** (k + 1) <= nd:
        k += 1
    # now p^k <= nd < p^(k+1)
    if p**k == nd:
        v = Fraction(k, denom)
        return v, v
    return Fraction(k, denom), Fraction(k + 1, denom)


@dataclass(frozen=True)
class BoundCheck:
    p: int
    n: int
    beta: int
    bound_upper: float  # outward-rounded bound; verdict True means beta >= true bound
    slack: float        # certified lower bound on beta - bound
    verdict: bool
    exact_fallback: bool = False


def _nudge_up(x: float, steps: int = 4) -> float:
    for _ in range(steps):
        x = math.nextafter(x, math.inf)
    return x


def _nudge_down(x: float, steps: int = 4) -> float:
    for _ in range(steps):
        x = math.nextafter(x, -math.inf)
    return x


def check_beta_lower_bound(p: int, n: int) -> BoundCheck:
    """Certify beta_p(n) >= n log_p(n) (p-1)/p - n p/(p-1)."""
    b = beta(p, n).value
    log_up = _nudge_up(math.log(n) / _nudge_down(math.log(p))) if n > 1 else 0.0
    term1 = _nudge_up(n * log_up * (p - 1) / p)
    term2 = _nudge_down(n * p / (p - 1))
    bound_up = _nudge_up(term1 - term2)
    if b >= bound_up:
        return BoundCheck(p, n, b, bound_up, b - bound_up, True)
    return _beta_bound_exact(p, n, b, bound_up)


def _beta_bound_exact(p: int, n: int, b: int, bound_up: float) -> BoundCheck:
    """Exact re-check: log_p(n) <= (beta + np/(p-1)) * p / (n(p-1))."""
    q_limit = (Fraction(b) + Fraction(n * p, p - 1)) * Fraction(p, n * (p - 1))
    denom = 64
    while denom <= 4096:
        lo, hi = log_p_bounds(n, p, denom)
        if hi <= q_limit:
            return BoundCheck(p, n, b, bound_up, b - bound_up, True, exact_fallback=True)
        if lo > q_limit:
            return BoundCheck(p, n, b, bound_up, b - bound_up, False, exact_fallback=True)
        denom *= 2
    raise ArithmeticError(f"could not separate log_p({n}) from {q_limit} at denominator 4096")


def check_beta_lower_bound_range(p: int, n_max: int):
    """Vectorized certified sweep of the lower bound for n = 1..n_max.

    Returns (failures, min_slack): failures is the list of n where even the
    exact fallback rejects the inequality (expected empty).
    """
    betas = beta_range(p, n_max).astype(np.float64)
    n = np.arange(1, n_max + 1, dtype=np.float64)
    logs = np.log(n) / _nudge_down(math.log(p))
    for _ in range(4):
        logs = np.nextafter(logs, np.inf)
    term1 = np.nextafter(n * logs * ((p - 1) / p), np.inf)
    term2 = np.nextafter(n * (p / (p - 1)), -np.inf)
    bound_up = np.nextafter(term1 - term2, np.inf)
    ok = betas >= bound_up
    failures = []
    for idx in np.nonzero(~ok)[0]:
        check = check_beta_lower_bound(p, int(idx) + 1)
        if not check.verdict:
            failures.append(int(idx) + 1)
    min_slack = float(np.min(betas - bound_up))
    return failures, min_slack


def check_corollary_bound(p: int, N: int, n: int) -> BoundCheck:
    """Certify beta_p(n) >= n log_p(n) / 4 on the corollary range p^8 <= n < p^N."""
    if not (p**8 <= n < p**N):
        raise ValueError(f"n = {n} outside the corollary range [p^8, p^N)")
    b = beta(p, n).value
    log_up = _nudge_up(math.log(n) / _nudge_down(math.log(p)))
    bound_up = _nudge_up(n * log_up / 4)
    if b >= bound_up:
        return BoundCheck(p, n, b, bound_up, b - bound_up, True)
    # exact re-check: log_p(n) <= 4*beta/n
    q_limit = Fraction(4 * b, n)
    denom = 64
    while denom <= 4096:
        lo, hi = log_p_bounds(n, p, denom)
        if hi <= q_limit:
            return BoundCheck(p, n, b, bound_up, b - bound_up, True, exact_fallback=True)
        if lo > q_limit:
            return BoundCheck(p, n, b, bound_up, b - bound_up, False, exact_fallback=True)
        denom *= 2
    raise ArithmeticError(f"could not separate log_p({n}) from {q_limit} at denominator 4096")


def poch_valuation_formula(p: int, N: int, n: int) -> Fraction:
    """lambda * beta_p(n) with lambda = 1/(p^(N-1)(p-1)); the valuation of (zeta; zeta)_n."""
    if not (1 <= n < p**N):
        raise ValueError(f"n = {n} outside [1, p^N)")
    e = p ** (N - 1) * (p - 1)
    return Fraction(beta(p, n).value, e)


def poch_valuation_direct(field: CyclotomicField, n: int) -> Fraction:
    """Valuation of the honestly computed product (zeta; zeta)_n in the field."""
    zeta = CycloElement.zeta(field)
    return q_pochhammer(zeta, zeta, n).valuation().expect_finite()
