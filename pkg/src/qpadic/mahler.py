"""Mahler and q-Mahler expansions of functions on Z_p.

Coefficients come from iterating the twisted difference operator
T f(x) = (f(x+1) - f(x)) / q^x and reading off a_k = q^(k choose 2) (T^k f)(0).
Symbolic models (exponentials) stay closed under T; table-backed models
consume one value of lookahead per application, so the chain is evaluated
lazily on the integers with memoization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import FieldMismatch, UnknownTail, UnsupportedModel
from .padic.element import CycloElement
from .padic.scalar import INF, Valuation
from .qcalc import q_binomial_row


# -- tail bounds ---------------------------------------------------------------

@dataclass(frozen=True)
class DecayTail:
    """Certified rule v(a_k) >= floor(k / p^level) * step + shift for k beyond the series."""

    level: int
    step: Fraction | float
    shift: Fraction

    def bound_at(self, k: int, p: int) -> Fraction | float:
        if self.step == INF:
            return INF
        return (k // p**self.level) * self.step + self.shift


ZERO_TAIL = "zero"  # all coefficients beyond the stored range vanish exactly


@dataclass(frozen=True)
class CoeffSeries:
    """Truncated q-Mahler coefficient sequence with provenance of its tail."""

    q: CycloElement
    coeffs: tuple[CycloElement, ...]
    tail: DecayTail | str | None = None  # DecayTail, ZERO_TAIL, or None (unknown)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1


# -- function models -------------------------------------------------------------

class FunctionModel:
    """A continuous function on Z_p, in one of the closed model kinds."""

    field = None

    def value_at(self, x: int) -> CycloElement:
        raise NotImplementedError


@dataclass(frozen=True)
class LocallyConstant(FunctionModel):
    """f(x) = table[x mod p^level]; table has exactly p^level entries."""

    level: int
    table: tuple[CycloElement, ...]

    def __post_init__(self):
        fld = self.table[0].field
        if len(self.table) != fld.p**self.level:
            raise ValueError(f"table must have p^level = {fld.p ** self.level} entries")
        for t in self.table[1:]:
            if not fld.same_as(t.field):
                raise FieldMismatch("table values live in different fields")

    @property
    def field(self):
        return self.table[0].field

    def value_at(self, x: int) -> CycloElement:
        return self.table[x % len(self.table)]

    def min_valuation(self) -> Fraction | float:
        vals = [t.valuation().value for t in self.table]
        return min(vals)


@dataclass(frozen=True)
class ExponentialSum(FunctionModel):
    """f(x) = sum_n coef_n * base_n^x with every v(base_n - 1) > 0."""

    terms: tuple[tuple[CycloElement, CycloElement], ...]

    def __post_init__(self):
        fld = self.field
        one = CycloElement.from_int(fld, 1)
        for _, base in self.terms:
            v = (base - one).valuation().value
            if v <= 0:
                raise ValueError("exponential base must satisfy v(base - 1) > 0")

    @property
    def field(self):
        return self.terms[0][0].field

    def value_at(self, x: int) -> CycloElement:
        if x < 0:
            raise ValueError("integer evaluation needs x >= 0")
        acc = CycloElement.zero(self.field)
        for coef, base in self.terms:
            acc = acc + coef * base**x
        return acc


def exponential(base: CycloElement) -> ExponentialSum:
    """The single exponential x |-> base^x."""
    return ExponentialSum(((CycloElement.from_int(base.field, 1), base),))


@dataclass(frozen=True)
class FiniteCoeffs(FunctionModel):
    """f(x) = sum_{k<=K} a_k C_q(x, k); exact at integer points."""

    series: CoeffSeries

    @property
    def field(self):
        return self.series.q.field

    def value_at(self, x: int) -> CycloElement:
        return evaluate_partial(self.series, x)


@dataclass
class _TWindow(FunctionModel):
    """T^depth applied to a table-backed model, evaluated lazily on integers."""

    source: FunctionModel
    q: CycloElement
    parent: "_TWindow | None" = None
    _cache: dict = dc_field(default_factory=dict)
    _qinv_pows: list = dc_field(default_factory=list)

    @property
    def field(self):
        return self.source.field

    def _qinv(self, i: int) -> CycloElement:
        if self.parent is not None:
            return self.parent._qinv(i)
        pows = self._qinv_pows
        if not pows:
            pows.append(CycloElement.from_int(self.field, 1))
            pows.append(self.q.invert())
        while len(pows) <= i:
            pows.append(pows[-1] * pows[1])
        return pows[i]

    def value_at(self, x: int) -> CycloElement:
        hit = self._cache.get(x)
        if hit is None:
            prev = self.parent if self.parent is not None else self.source
            hit = (prev.value_at(x + 1) - prev.value_at(x)) * self._qinv(x)
            self._cache[x] = hit
        return hit


def apply_T(f: FunctionModel, q: CycloElement) -> FunctionModel:
    """The model of x |-> (f(x+1) - f(x)) / q^x, closed per model kind."""
    if q.valuation().value != 0:
        raise ValueError("q must be a unit")
    if isinstance(f, ExponentialSum):
        one = CycloElement.from_int(f.field, 1)
        qinv = q.invert()
        return ExponentialSum(
            tuple((coef * (base - one), base * qinv) for coef, base in f.terms)
        )
    if isinstance(f, FiniteCoeffs):
        s = f.series
        if not s.q.equals(q):
            raise UnsupportedModel("coefficient shift requires the same q")
        qinv = q.invert()
        qpow = CycloElement.from_int(f.field, 1)
        shifted = []
        for a in s.coeffs[1:]:
            # T(C_q(x, k)) = q^-(k-1) C_q(x, k-1)
            shifted.append(a * qpow)
            qpow = qpow * qinv
        tail = ZERO_TAIL if s.tail == ZERO_TAIL else None
        return FiniteCoeffs(CoeffSeries(q, tuple(shifted) or (CycloElement.zero(f.field),), tail))
    if isinstance(f, (LocallyConstant, _TWindow)):
        if isinstance(f, _TWindow) and not f.q.equals(q):
            raise UnsupportedModel("T chain must keep a single q")
        return _TWindow(source=f if isinstance(f, LocallyConstant) else f.source, q=q,
                        parent=f if isinstance(f, _TWindow) else None)
    raise UnsupportedModel(f"apply_T does not support {type(f).__name__}")


# -- coefficient computation ----------------------------------------------------

def q_mahler_coeffs(f: FunctionModel, q: CycloElement, K: int) -> CoeffSeries:
    """First K+1 q-Mahler coefficients a_k = q^(k choose 2) (T^k f)(0).

    For locally constant f of level p^L the certified decay rule
    v(a_k) >= floor(k / p^L) * min(v(q-1), 1) + v_min(f) is attached as the
    tail bound; exponential sums get the linear rule from their factors.
    """
    fld = f.field
    if not fld.same_as(q.field):
        raise FieldMismatch("function model and q live in different fields")
    one = CycloElement.from_int(fld, 1)
    vq = (q - one).valuation().value
    if vq <= 0:
        raise ValueError("q-Mahler expansion needs v(q - 1) > 0")
    coeffs = []
    model = f
    qbinom = one  # q^(k choose 2), advanced by q^(k-1) each step
    qpow = one
    for k in range(K + 1):
        coeffs.append(qbinom * model.value_at(0))
        model = apply_T(model, q)
        qbinom = qbinom * qpow
        qpow = qpow * q
    tail = _tail_rule(f, vq)
    return CoeffSeries(q, tuple(coeffs), tail)


def _tail_rule(f: FunctionModel, vq) -> DecayTail | str | None:
    if isinstance(f, LocallyConstant):
        step = min(vq, Fraction(1))
        return DecayTail(level=f.level, step=step, shift=_as_shift(f.min_valuation()))
    if isinstance(f, ExponentialSum):
        one = CycloElement.from_int(f.field, 1)
        step = min([vq] + [(b - one).valuation().value for _, b in f.terms])
        shift = min(c.valuation().value for c, _ in f.terms)
        return DecayTail(level=0, step=step, shift=_as_shift(shift))
    if isinstance(f, FiniteCoeffs) and f.series.tail == ZERO_TAIL:
        return ZERO_TAIL
    return None


def _as_shift(v) -> Fraction:
    return Fraction(0) if v == INF else v


def evaluate_partial(s: CoeffSeries, x: int) -> CycloElement:
    """sum_{k <= K} a_k C_q(x, k) at an integer point x >= 0 (exact)."""
    if x < 0:
        raise ValueError("partial evaluation needs integer x >= 0")
    fld = s.q.field
    k_top = min(len(s.coeffs) - 1, x)  # C_q(x, k) = 0 above the degree
    row = q_binomial_row(s.q, x, k_top)
    acc = CycloElement.zero(fld)
    for k in range(k_top + 1):
        acc = acc + s.coeffs[k] * row[k]
    return acc


def sup_norm_coeffs(s: CoeffSeries) -> Fraction:
    """-log_p of the sup norm: min_k v(a_k), with the tail bound closing the truncation."""
    vals = [a.valuation().value for a in s.coeffs]
    stored_min = min(vals)
    if s.tail == ZERO_TAIL:
        return stored_min
    if s.tail is None:
        raise UnknownTail("series has no tail bound; sup norm cannot be certified")
    p = s.q.field.p
    k_next = len(s.coeffs)
    if s.tail.bound_at(k_next, p) >= stored_min:
        return stored_min
    raise UnknownTail(
        "tail bound at k = %d is below the stored minimum; extend the series" % k_next,
        required_length=k_next,
    )


# -- the classical decay example -------------------------------------------------

@dataclass(frozen=True)
class DecayRow:
    k: int
    valuation: Fraction | float
    bound: Fraction | float
    ok: bool


@dataclass(frozen=True)
class DecayReport:
    eps_v: Fraction      # min_n v(zeta_n - 1)
    coef_v: Fraction     # min_n v(lambda_n)
    rows: tuple[DecayRow, ...]
    all_ok: bool


def exp_sum_decay_check(terms, K: int) -> DecayReport:
    """Classical Mahler coefficients b_k = sum_n lambda_n (zeta_n - 1)^k for an
    exponential sum, certified against |b_k| <= m eps^k, i.e.
    v(b_k) >= k * eps_v + coef_v."""
    fld = terms[0][0].field
    one = CycloElement.from_int(fld, 1)
    eps_v = min((b - one).valuation().value for _, b in terms)
    if eps_v <= 0:
        raise ValueError("every base must satisfy v(base - 1) > 0")
    coef_v = min(c.valuation().value for c, _ in terms)
    powers = [one] * len(terms)
    deltas = [b - one for _, b in terms]
    rows = []
    for k in range(K + 1):
        b_k = CycloElement.zero(fld)
        for (coef, _), pw in zip(terms, powers):
            b_k = b_k + coef * pw
        v = b_k.valuation().value
        bound = k * eps_v + coef_v
        rows.append(DecayRow(k, v, bound, v >= bound))
        powers = [pw * d for pw, d in zip(powers, deltas)]
    return DecayReport(eps_v, coef_v, tuple(rows), all(r.ok for r in rows))
