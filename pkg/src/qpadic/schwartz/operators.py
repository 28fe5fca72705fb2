"""The Schrödinger action, p-adic Fourier transform, and intertwining operators.

All operators are computed as exact finite coset sums with the Haar
normalization mu(Z_p^d) = 1.  Intertwiners for c != 0 are defined up to the
scalar this normalization fixes; every identity verified downstream is
scalar-invariant.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from ..errors import FieldTooSmall, WindowCapExceeded
from ..padic.element import CycloElement
from ..padic.scalar import INF, vp_fraction
from .character import AdditiveCharacter
from .function import SchwartzFunction, key_point
from .heisenberg import HeisenbergElement
from .symplectic import SymplecticMatrix, invert_matrix

WINDOW_CAP = 12  # exponent cap on conservative support/level bounds


def heisenberg_act(
    h: HeisenbergElement, f: SchwartzFunction, psi: AdditiveCharacter
) -> SchwartzFunction:
    """rho_psi([w, t]) f (x) = psi(t + a.b/2 + b.x) f(x + a), exactly."""
    p = f.field.p
    a, b, t = h.a, h.b, h.t
    m = f.m
    for ai in a:
        if ai != 0:
            m = max(m, -vp_fraction(ai, p))
    n = f.n
    for bi in b:
        if bi != 0:
            n = max(n, -_vp_or_inf(psi.shift * bi, p))
    const = psi(t + Fraction(1, 2) * sum(x * y for x, y in zip(a, b)))
    table = {}
    for key in itertools.product(range(p ** (m + n)), repeat=f.d):
        x = tuple(key_point(k, p, m) for k in key)
        fv = f.value_at(tuple(xi + ai for xi, ai in zip(x, a)))
        if fv.is_zero:
            continue
        phase = psi(sum(bi * xi for bi, xi in zip(b, x)))
        table[key] = const * phase * fv
    return SchwartzFunction(f.field, f.d, m, n, table).canonical()


def fourier(f: SchwartzFunction, psi: AdditiveCharacter) -> SchwartzFunction:
    """F(f)(x) = integral psi(x.t) f(t) dt as an exact coset sum, mu(Z_p^d) = 1."""
    fld = f.field
    p = fld.p
    vc = _vp_or_inf(psi.shift, p)
    if f.m + f.n > fld.N:
        raise FieldTooSmall(f.m + f.n, fld.N)
    m_out = f.n + vc
    n_out = f.m - vc
    items = [(f.point_of_key(k), v) for k, v in f.table.items()]
    mu = -f.n * f.d  # log_p of the coset measure mu(p^n Z_p^d)
    table = {}
    for key in itertools.product(range(p ** (m_out + n_out)), repeat=f.d):
        x = tuple(key_point(k, p, m_out) for k in key)
        acc = CycloElement.zero(fld)
        for t_pt, v in items:
            acc = acc + psi(sum(xi * ti for xi, ti in zip(x, t_pt))) * v
        if not acc.is_zero:
            table[key] = acc.scale_ppow(mu)
    return SchwartzFunction(fld, f.d, m_out, n_out, table).canonical()


# -- intertwining operators -------------------------------------------------------

def intertwine(
    g: SymplecticMatrix, f: SchwartzFunction, psi: AdditiveCharacter
) -> SchwartzFunction:
    """T_g in the fixed normalization mu(Z_p) = 1 (scalar-ambiguous by design).

    Supported: all g for d = 1; for d > 1 the generator classes c = 0 and the
    full J (the reductions of the theory work at d = 1).
    """
    if g.dim != f.d:
        raise ValueError("matrix dimension does not match the function dimension")
    if g.is_c_zero():
        return _intertwine_c_zero(g, f, psi)
    if f.d == 1:
        return _intertwine_sl2(g, f, psi)
    if g.is_standard_j():
        # d-dim instance of the c != 0 kernel: psi(-x c^-1 . y) = psi(x . y)
        return fourier(f, psi)
    raise WindowCapExceeded(
        "general c != 0 intertwiners are available for d = 1 and g = J only"
    )


def _intertwine_c_zero(g, f, psi):
    """T_g(f)(x) = psi((xa).(xb)/2) f(xa) for block-triangular g (a invertible)."""
    p = f.field.p
    a, b = g.block_a, g.block_b
    a_inv = invert_matrix(a)
    spread_inv = max(
        (0, *(-_vp_or_inf(x, p) for row in a_inv for x in row if x != 0)),
    )
    spread = max((0, *(-_vp_or_inf(x, p) for row in a for x in row if x != 0)))
    m_out = f.m + spread_inv
    n_out = max(f.n + spread, _quad_level(g, psi, m_out, p))
    if max(m_out + n_out, m_out, n_out) > WINDOW_CAP * max(1, f.d):
        raise WindowCapExceeded(f"c = 0 window grew to (m, n) = ({m_out}, {n_out})")
    table = {}
    for key in itertools.product(range(p ** (m_out + n_out)), repeat=f.d):
        x = tuple(key_point(k, p, m_out) for k in key)
        xa = _vec_mat(x, a)
        fv = f.value_at(xa)
        if fv.is_zero:
            continue
        xb = _vec_mat(x, b)
        phase = psi(Fraction(1, 2) * sum(u * v for u, v in zip(xa, xb)))
        table[key] = phase * fv
    return SchwartzFunction(f.field, f.d, m_out, n_out, table).canonical()


def _intertwine_sl2(g, f, psi):
    """Direct coset-sum intertwiner for d = 1, c != 0:

    T_g(f)(x) = sum over y-cosets of psi((a x^2 - 2 x y + d y^2) / 2c) f(y) mu,
    the kernel for which rho_psi([w,t]) T_g = T_g rho_psi([w g, t]) holds on
    the nose (the phase matching is an exact polynomial identity in w).
    """
    p = f.field.p
    a, c, d = g.block_a[0][0], g.block_c[0][0], g.block_d[0][0]
    m_win, n_win = _window_bounds_c_nonzero(g, f, psi)
    if max(abs(m_win), abs(n_win), m_win + n_win) > WINDOW_CAP:
        raise WindowCapExceeded(f"window bounds (m, n) = ({m_win}, {n_win}) exceed the cap")
    # y-lattice fine enough that every summand is constant on its coset
    level = max(f.n, m_win - _vp_or_inf(psi.shift / c, p))
    if d != 0:
        level = max(level, f.m - _vp_or_inf(psi.shift * d / c, p))
        sq = -_vp_or_inf(psi.shift * d / (2 * c), p)
        level = max(level, math.ceil(sq / 2))
    L = max(level, -f.m)
    fld = f.field
    inv2c = Fraction(1) / (2 * c)
    table = {}
    y_points = [key_point(tt, p, f.m) for tt in range(p ** (f.m + L))]
    y_values = [f.value_at((y,)) for y in y_points]
    for key in range(p ** (m_win + n_win)):
        x = key_point(key, p, m_win)
        acc = CycloElement.zero(fld)
        for y, fv in zip(y_points, y_values):
            if fv.is_zero:
                continue
            phase = psi((a * x * x - 2 * x * y + d * y * y) * inv2c)
            acc = acc + phase * fv
        if not acc.is_zero:
            table[(key,)] = acc.scale_ppow(-L)
    return SchwartzFunction(fld, 1, m_win, n_win, table).canonical()


def _window_bounds_c_nonzero(g, f, psi):
    """Sound (m, n) bounds for T_g(f) from the n1 * w * n2 factorization:

    g = (1, a/c; 0, 1) (0, -1/c; c, 0) (1, d/c; 0, 1); each factor has exact
    support/level tracking, and T_g equals the composition up to a scalar.
    """
    p = f.field.p
    a = g.block_a[0][0]
    c = g.block_c[0][0]
    d = g.block_d[0][0]
    vc = _vp_or_inf(psi.shift, p)
    vof_c = vp_fraction(c, p)
    # step 1: multiply by psi((d/2c) x^2) -- support m_f, level bumps
    n1 = max(f.n, _quad_level_scalar(psi.shift * d / c, f.m, p))
    # step 2: w-factor sends (m, n) -> (n + vc - v(c), m - vc + v(c))
    m2 = n1 + vc - vof_c
    n2 = f.m - vc + vof_c
    # step 3: multiply by psi((a/2c) x^2)
    n3 = max(n2, _quad_level_scalar(psi.shift * a / c, m2, p)) if a != 0 else n2
    return m2, n3


def _quad_level_scalar(coef: Fraction, m: int, p: int) -> int:
    """Smallest L making x |-> psi(coef x^2 / 2) constant on cosets of p^L
    within p^(-m) Z_p."""
    if coef == 0:
        return -m
    v = vp_fraction(coef, p)
    cross = m - v  # psi(coef x0 u) with v(x0) >= -m
    square = math.ceil((-v + _half_penalty(p)) / 2)  # psi(coef u^2 / 2)
    return max(cross, square, -m)


def _half_penalty(p: int) -> int:
    # the square term is psi(coef u^2 / 2); dividing by 2 costs a digit at p = 2
    return 1 if p == 2 else 0


def _quad_level(g, psi, m: int, p: int) -> int:
    """Level needed by psi((xa).(xb)/2) on p^(-m) Z_p^d (matrix form, c = 0)."""
    a, b = g.block_a, g.block_b
    d = g.dim
    worst = -m
    # bilinear form B = a b^t / 2; cross terms use B + B^t = (a b^t + b a^t)/2
    for i in range(d):
        for j in range(d):
            s = sum(a[i][k] * b[j][k] for k in range(d))
            s2 = sum(b[i][k] * a[j][k] for k in range(d))
            cross = s + s2
            if cross != 0:
                worst = max(worst, m - vp_fraction(psi.shift * cross / 2, p))
            if s != 0:
                vsq = vp_fraction(psi.shift * s / 2, p)
                worst = max(worst, math.ceil(-vsq / 2))
    return worst


def _vec_mat(x, mat):
    d = len(x)
    return tuple(sum(x[i] * mat[i][j] for i in range(d)) for j in range(d))


def _vp_or_inf(x: Fraction, p: int):
    return vp_fraction(Fraction(x), p) if x != 0 else INF


# -- verification-level operations ---------------------------------------------------

def check_intertwining(
    g: SymplecticMatrix,
    h: HeisenbergElement,
    f: SchwartzFunction,
    psi: AdditiveCharacter,
) -> bool:
    """rho_psi([w,t]) T_g f == T_g rho_psi([wg, t]) f, exactly (scalar-invariant)."""
    lhs = heisenberg_act(h, intertwine(g, f, psi), psi)
    rhs = intertwine(g, heisenberg_act(h.times_symplectic(g), f, psi), psi)
    return lhs.equals(rhs)


@dataclass(frozen=True)
class NormGrowthPoint:
    n: int
    value_at_zero: Fraction | float  # valuation of T_g(f_n)(0)
    sup_norm_valuation: Fraction | float
    input_sup_valuation: Fraction | float


def norm_growth_family(
    g: SymplecticMatrix, n: int, psi: AdditiveCharacter, field
) -> NormGrowthPoint:
    """T_g applied to f_n = 1_{p^n Z_p}: the norm non-equivalence witness."""
    f_n = SchwartzFunction.indicator(field, 1, n)
    image = intertwine(g, f_n, psi)
    at_zero = image.value_at((Fraction(0),)).valuation().value
    return NormGrowthPoint(
        n, at_zero, image.sup_norm_valuation(), f_n.sup_norm_valuation()
    )
