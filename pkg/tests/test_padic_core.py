"""padic-core: field construction, ring ops, valuations, the resultant oracle."""

import math
import random
from fractions import Fraction

import pytest

from qpadic.errors import FieldMismatch, InsufficientPrecision, PrecisionOverflow, \
    ZeroAtPrecisionError
from qpadic.padic import (
    INF,
    CycloElement,
    PadicScalar,
    embed_up,
    make_field,
    parse_element,
    resultant_int,
    valuation_by_resultant,
    vp_int,
    zeta_pow,
)

from conftest import random_element, random_monic_element

FIELDS = [(p, N) for p in (2, 3, 5) for N in (1, 2, 3)]


class TestScalar:
    def test_from_int_roundtrip(self):
        s = PadicScalar.from_int(5, 350, 8)  # 350 = 2 * 5^2 * 7
        assert s.shift == 2 and s.residue == 14 % 5**8

    def test_add_cancellation_tracks_precision(self):
        p = 3
        a = PadicScalar.from_int(p, 1 + 3**5, 8)
        b = PadicScalar.from_int(p, -1, 8)
        c = a.add(b)
        assert c.shift == 5
        assert c.prec == 3  # five digits cancelled out of eight

    def test_zero_at_precision(self):
        p = 2
        a = PadicScalar.from_int(p, 1, 8)
        diff = a.sub(PadicScalar.from_int(p, 1, 8))
        assert diff.is_zero and not diff.exact
        v = diff.valuation()
        assert v.value == INF and v.is_zero_at_precision

    def test_inverse_of_zero_raises(self):
        with pytest.raises(ZeroDivisionError):
            PadicScalar.exact_zero(3).inv()
        with pytest.raises(ZeroAtPrecisionError):
            PadicScalar.zero_at(3, 10).inv()

    def test_fraction_constructor(self):
        s = PadicScalar.from_fraction(2, Fraction(3, 8), 10)
        assert s.shift == -3
        assert s.residue == 3


class TestMakeField:
    def test_p2_n1(self):
        fld = make_field(2, 1, 32)
        assert fld.e == 1 and fld.eisenstein == [2, 1]

    def test_p2_n2(self):
        fld = make_field(2, 2, 32)
        assert fld.e == 2 and fld.eisenstein == [2, 2, 1]

    def test_p3_n2(self):
        fld = make_field(3, 2, 32)
        assert fld.e == 6 and fld.eisenstein[0] == 3

    def test_eisenstein_conditions(self):
        for p, N in FIELDS:
            fld = make_field(p, N, 8)
            e = fld.e
            assert len(fld.eisenstein) == e + 1 and fld.eisenstein[e] == 1
            assert vp_int(fld.eisenstein[0], p) == 1
            assert all(c % p == 0 for c in fld.eisenstein[:e])

    def test_rejects_composite(self):
        with pytest.raises(ValueError):
            make_field(6, 1, 32)

    def test_rejects_oversize(self):
        with pytest.raises(PrecisionOverflow):
            make_field(2, 20, 32)
        with pytest.raises(PrecisionOverflow):
            make_field(2, 2, 1 << 20)

    def test_zeta_has_exact_order(self):
        for p, N in FIELDS:
            fld = make_field(p, N, 16)
            z = CycloElement.zeta(fld)
            one = CycloElement.from_int(fld, 1)
            assert (z ** (p**N)).equals(one)
            if N > 1 or p > 2:
                assert not (z ** (p ** (N - 1))).equals(one)

    def test_minimal_polynomial_vanishes(self):
        for p, N in [(2, 2), (3, 2), (5, 1)]:
            fld = make_field(p, N, 32)
            z = CycloElement.zeta(fld)
            pi = z - CycloElement.from_int(fld, 1)
            acc = CycloElement.zero(fld)
            for c in reversed(fld.eisenstein):
                acc = acc * pi + CycloElement.from_int(fld, c)
            assert acc.is_zero


class TestRingOps:
    def test_root_of_unity_inverse(self, field22):
        z = CycloElement.zeta(field22)
        assert (z * z**3).equals(CycloElement.from_int(field22, 1))

    def test_additive_inverse_is_zero(self, field22):
        one = CycloElement.from_int(field22, 1)
        z = CycloElement.zeta(field22)
        assert ((z - one) + (one - z)).is_zero

    def test_zeta_squared_is_minus_one(self, field22):
        # reduction pi^2 = -2 pi - 2 turns (1 + pi)^2 into -1
        z = CycloElement.zeta(field22)
        assert (z * z).equals(CycloElement.from_int(field22, -1))

    def test_field_mismatch(self, field22, field32):
        with pytest.raises(FieldMismatch):
            CycloElement.zeta(field22) * CycloElement.zeta(field32)

    def test_scalar_paths_match_generic(self, field32, rng):
        for _ in range(50):
            a = random_element(field32, rng)
            k = rng.randint(-20, 20)
            assert a.scale_int(k).equals(a * CycloElement.from_int(field32, k))


class TestInvert:
    def test_one(self, field23):
        one = CycloElement.from_int(field23, 1)
        assert one.invert().equals(one)

    def test_zeta_inverse_is_power(self, field22):
        z = CycloElement.zeta(field22)
        assert z.invert().equals(z**3)

    def test_multiply_back(self, field22):
        one = CycloElement.from_int(field22, 1)
        a = one - CycloElement.zeta(field22)
        assert (a.invert() * a).equals(one)

    def test_random_multiply_back(self, field32, rng):
        one = CycloElement.from_int(field32, 1)
        for _ in range(25):
            a = random_element(field32, rng)
            if a.is_zero:
                continue
            assert (a * a.invert()).equals(one)

    def test_zero_rejected(self, field22):
        with pytest.raises(ZeroDivisionError):
            CycloElement.zero(field22).invert()


class TestValuation:
    def test_uniformizer(self, field22):
        one = CycloElement.from_int(field22, 1)
        z = CycloElement.zeta(field22)
        assert (one - z).valuation().value == Fraction(1, field22.e)

    def test_prime(self, field22):
        assert CycloElement.from_int(field22, 2).valuation().value == 1

    def test_product_example(self, field22):
        one = CycloElement.from_int(field22, 1)
        z = CycloElement.zeta(field22)
        prod = (one - z) * (one - z * z)
        assert prod.valuation().value == Fraction(3, 2)

    def test_multiplicative_sweep(self, rng):
        for p, N in FIELDS:
            fld = make_field(p, N, 32)
            for _ in range(1000):
                a, b = random_element(fld, rng), random_element(fld, rng)
                va, vb = a.valuation(), b.valuation()
                if va.value == INF or vb.value == INF:
                    continue
                assert (a * b).valuation().value == va.value + vb.value

    def test_ultrametric_sweep(self, rng):
        for p, N in FIELDS:
            fld = make_field(p, N, 32)
            for _ in range(300):
                a, b = random_element(fld, rng), random_element(fld, rng)
                va, vb = a.valuation().value, b.valuation().value
                vs = (a + b).valuation().value
                assert vs >= min(va, vb)
                if va != vb:
                    assert vs == min(va, vb)

    def test_root_difference_formula(self):
        for p, N in FIELDS:
            fld = make_field(p, N, 32)
            one = CycloElement.from_int(fld, 1)
            lam = Fraction(1, fld.e)
            for m in range(1, p**N):
                got = (one - zeta_pow(fld, m)).valuation().value
                assert got == lam * p ** vp_int(m, p)


class TestResultantOracle:
    def test_prime(self, field32):
        assert valuation_by_resultant(CycloElement.from_int(field32, 3)).value == 1

    def test_one_minus_zeta_p3_n1(self):
        fld = make_field(3, 1, 32)
        a = CycloElement.from_int(fld, 1) - CycloElement.zeta(fld)
        assert valuation_by_resultant(a).value == Fraction(1, 2)

    def test_unit(self):
        fld = make_field(3, 1, 32)
        assert valuation_by_resultant(CycloElement.zeta(fld)).value == 0

    def test_known_resultants(self):
        assert resultant_int([0, -1], [3, 3, 1]) in (3, -3)
        assert resultant_int([1, 0, 1], [-1, 0, 1]) == 4
        assert resultant_int([7], [2, 2, 1]) == 49

    def test_against_sylvester(self, rng):
        for _ in range(200):
            da, db = rng.randint(1, 5), rng.randint(1, 5)
            a = [rng.randint(-9, 9) for _ in range(da)] + [rng.randint(1, 9)]
            b = [rng.randint(-9, 9) for _ in range(db)] + [rng.randint(1, 9)]
            assert resultant_int(a, b) == _sylvester_det(a, b)

    def test_agreement_sweep(self, rng):
        for p, N in FIELDS:
            fld = make_field(p, N, 32)
            for _ in range(1000):
                a = random_monic_element(fld, rng)
                v1, v2 = a.valuation(), valuation_by_resultant(a)
                if v1.value == INF:
                    assert v2.value == INF
                else:
                    assert v1.value == v2.value


def _sylvester_det(a, b):
    """Brute-force resultant via exact fraction Gaussian elimination."""
    a, b = a[::-1], b[::-1]
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    rows = [[0] * i + a + [0] * (n - 1 - i) for i in range(n)]
    rows += [[0] * i + b + [0] * (m - 1 - i) for i in range(m)]
    mat = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for col in range(size):
        piv = next((r for r in range(col, size) if mat[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            det = -det
        det *= mat[col][col]
        inv = 1 / mat[col][col]
        for r in range(col + 1, size):
            f = mat[r][col] * inv
            if f:
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[col])]
    assert det.denominator == 1
    return int(det)


class TestEmbedUp:
    def test_identity_on_constants(self, field22, field23):
        one = CycloElement.from_int(field22, 1)
        target = make_field(2, 3, 32)
        assert embed_up(one, target).equals(CycloElement.from_int(target, 1))

    def test_defining_relation(self):
        src = make_field(3, 1, 32)
        dst = make_field(3, 2, 32)
        img = embed_up(CycloElement.zeta(src), dst)
        assert img.equals(zeta_pow(dst, 3))

    def test_valuation_preserved(self):
        src = make_field(2, 2, 32)
        dst = make_field(2, 4, 32)
        a = CycloElement.from_int(src, 1) - CycloElement.zeta(src)
        assert embed_up(a, dst).valuation().value == Fraction(1, 2)

    def test_rejects_downward(self):
        src = make_field(2, 3, 32)
        dst = make_field(2, 2, 32)
        with pytest.raises(FieldMismatch):
            embed_up(CycloElement.zeta(src), dst)

    def test_ring_homomorphism(self, rng):
        src = make_field(3, 1, 32)
        dst = make_field(3, 3, 32)
        for _ in range(20):
            a, b = random_element(src, rng), random_element(src, rng)
            assert embed_up(a * b, dst).equals(embed_up(a, dst) * embed_up(b, dst))
            assert embed_up(a + b, dst).equals(embed_up(a, dst) + embed_up(b, dst))


class TestSerialization:
    def test_roundtrip(self, field23, rng):
        for _ in range(20):
            a = random_element(field23, rng)
            back = CycloElement.from_json(a.to_json(), field23)
            assert back.equals(a)

    def test_shape(self, field22):
        data = CycloElement.zeta(field22).to_json()
        assert set(data) == {"p", "N", "P", "coeffs"}
        assert len(data["coeffs"]) == field22.e
        shift, digits = data["coeffs"][0]
        assert shift == 0 and digits[0] == 1

    def test_negative_shift_roundtrip(self, field22):
        a = CycloElement.from_int(field22, 3).scale_ppow(-2)
        assert CycloElement.from_json(a.to_json(), field22).equals(a)


class TestParse:
    def test_q_expression(self, field23):
        q = parse_element(field23, "zeta + pi^2")
        pi = CycloElement.pi(field23)
        assert q.equals(CycloElement.zeta(field23) + pi * pi)

    def test_arith(self, field22):
        a = parse_element(field22, "2*zeta^3 - (1 + pi)")
        z = CycloElement.zeta(field22)
        assert a.equals(z**3 + z**3 - z)

    def test_bad_token(self, field22):
        with pytest.raises(ValueError):
            parse_element(field22, "zeta + omega")
