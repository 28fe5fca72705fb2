"""mahler: T-operator chains, q-Mahler coefficients, sup-norm identity, decay."""

import math
import random
from fractions import Fraction

import pytest

from qpadic.errors import UnknownTail
from qpadic.mahler import (
    CoeffSeries,
    DecayTail,
    FiniteCoeffs,
    LocallyConstant,
    ZERO_TAIL,
    apply_T,
    evaluate_partial,
    exp_sum_decay_check,
    exponential,
    q_mahler_coeffs,
    sup_norm_coeffs,
)
from qpadic.padic import INF, CycloElement, make_field, zeta_pow
from qpadic.qcalc import zq_coefficient_sequence


@pytest.fixture(scope="module")
def setup23():
    fld = make_field(2, 3, 64)
    z = CycloElement.zeta(fld)
    q = z + CycloElement.pi(fld) ** 2
    return fld, z, q


class TestApplyT:
    def test_qx_becomes_constant(self, setup23):
        fld, z, q = setup23
        image = apply_T(exponential(q), q)
        want = q - CycloElement.from_int(fld, 1)
        for x in (0, 3, 7):
            assert image.value_at(x).equals(want)

    def test_zeta_x(self, setup23):
        fld, z, q = setup23
        image = apply_T(exponential(z), q)
        one = CycloElement.from_int(fld, 1)
        want = (z - one) * (z * q.invert()) ** 4
        assert image.value_at(4).equals(want)

    def test_constant_to_zero(self, setup23):
        fld, z, q = setup23
        one = CycloElement.from_int(fld, 1)
        image = apply_T(exponential(one), q)
        assert image.value_at(5).is_zero

    def test_finite_coeffs_shift(self, setup23):
        fld, z, q = setup23
        series = q_mahler_coeffs(exponential(z), q, 6)
        model = FiniteCoeffs(series)
        shifted = apply_T(model, q)
        direct = apply_T(exponential(z), q)
        for x in range(5):
            assert shifted.value_at(x).equals(direct.value_at(x))


class TestQMahlerCoeffs:
    def test_exponential_closed_form(self, setup23):
        fld, z, q = setup23
        series = q_mahler_coeffs(exponential(z), q, 40)
        closed = zq_coefficient_sequence(z, q, 40)
        for k in range(41):
            assert series.coeffs[k].equals(closed[k])

    def test_constant_function(self, setup23):
        fld, z, q = setup23
        one = CycloElement.from_int(fld, 1)
        series = q_mahler_coeffs(exponential(one), q, 8)
        assert series.coeffs[0].equals(one)
        assert all(c.is_zero for c in series.coeffs[1:])

    def test_classical_indicator(self):
        # q = 1, f = 1_{2 Z_2}: a_0 = 1 and a_k = -(-2)^(k-1)
        fld = make_field(2, 1, 64)
        one = CycloElement.from_int(fld, 1)
        f = LocallyConstant(1, (one, CycloElement.zero(fld)))
        series = q_mahler_coeffs(f, one, 10)
        assert series.coeffs[0].equals(one)
        for k in range(1, 11):
            want = CycloElement.from_int(fld, -((-2) ** (k - 1)))
            assert series.coeffs[k].equals(want)

    def test_classical_matches_difference_oracle(self, rng):
        # q = 1 reduces to a_k = (Delta^k f)(0) on random locally constant f
        fld = make_field(3, 1, 64)
        one = CycloElement.from_int(fld, 1)
        for _ in range(10):
            values = [rng.randint(-5, 5) for _ in range(9)]
            f = LocallyConstant(2, tuple(CycloElement.from_int(fld, v) for v in values))
            series = q_mahler_coeffs(f, one, 12)
            for k in range(13):
                want = sum(
                    (-1) ** (k - j) * math.comb(k, j) * values[j % 9] for j in range(k + 1)
                )
                assert series.coeffs[k].equals(CycloElement.from_int(fld, want))

    def test_locally_constant_decay_rule(self, setup23, rng):
        fld, z, q = setup23
        p_level = 1
        table = tuple(
            zeta_pow(fld, rng.randint(0, 7)).scale_int(rng.randint(1, 3))
            for _ in range(2**p_level)
        )
        f = LocallyConstant(p_level, table)
        series = q_mahler_coeffs(f, q, 24)
        assert isinstance(series.tail, DecayTail)
        for k, c in enumerate(series.coeffs):
            assert c.valuation().value >= series.tail.bound_at(k, fld.p)

    def test_rejects_bad_q(self, setup23):
        fld, z, q = setup23
        two = CycloElement.from_int(fld, 2)
        with pytest.raises(ValueError):
            q_mahler_coeffs(exponential(z), two, 4)


class TestEvaluatePartial:
    def test_constant_series(self, setup23):
        fld, z, q = setup23
        one = CycloElement.from_int(fld, 1)
        s = CoeffSeries(q, (one,), ZERO_TAIL)
        for x in (0, 1, 9):
            assert evaluate_partial(s, x).equals(one)

    def test_reconstructs_exponential(self, setup23):
        fld, z, q = setup23
        series = q_mahler_coeffs(exponential(z), q, 12)
        for x in (0, 1, 2, 5, 9, 12):
            assert evaluate_partial(series, x).equals(z**x)

    def test_x1_is_zeta(self, setup23):
        fld, z, q = setup23
        series = q_mahler_coeffs(exponential(z), q, 3)
        assert evaluate_partial(series, 1).equals(z)


class TestSupNorm:
    def test_single_entry(self, setup23):
        fld, z, q = setup23
        one = CycloElement.from_int(fld, 1)
        assert sup_norm_coeffs(CoeffSeries(q, (one,), ZERO_TAIL)) == 0

    def test_exponential_norm_one(self, setup23):
        fld, z, q = setup23
        series = q_mahler_coeffs(exponential(z), q, 12)
        assert sup_norm_coeffs(series) == 0

    def test_scaled(self, setup23):
        fld, z, q = setup23
        s = CoeffSeries(
            q, (CycloElement.zero(fld), CycloElement.from_int(fld, 2)), ZERO_TAIL
        )
        assert sup_norm_coeffs(s) == 1

    def test_unknown_tail_raises(self, setup23):
        fld, z, q = setup23
        s = CoeffSeries(q, (CycloElement.from_int(fld, 1),), None)
        with pytest.raises(UnknownTail):
            sup_norm_coeffs(s)

    def test_mahler_identity_with_attainment(self, setup23, rng):
        # ||f||_sup = max |a_k| for finite series; the attainment search over
        # x in {0 .. p^L - 1} succeeds at depth L = L_0 + 2
        fld, z, q = setup23
        for _ in range(10):
            coeffs = tuple(
                zeta_pow(fld, rng.randint(0, 7)).scale_ppow(rng.randint(0, 3))
                for _ in range(5)
            )
            s = CoeffSeries(q, coeffs, ZERO_TAIL)
            norm_val = sup_norm_coeffs(s)
            level0 = 3  # smallest L with p^L > series order
            depth = fld.p ** (level0 + 2)
            sampled = INF
            for x in range(depth):
                v = evaluate_partial(s, x).valuation().value
                sampled = min(sampled, v)
            assert sampled >= norm_val  # ultrametric upper bound on |f|
            assert sampled == norm_val  # attainment at the stated depth


class TestDecayExample:
    def test_single_term_tight(self):
        fld = make_field(3, 2, 48)
        one = CycloElement.from_int(fld, 1)
        report = exp_sum_decay_check([(one, CycloElement.zeta(fld))], 30)
        assert report.all_ok
        for row in report.rows:
            assert row.valuation == row.bound  # equality case

    def test_cancellation(self):
        fld = make_field(3, 2, 48)
        one = CycloElement.from_int(fld, 1)
        z = CycloElement.zeta(fld)
        report = exp_sum_decay_check([(one, z), (-one, z)], 20)
        assert report.all_ok
        assert all(row.valuation == INF for row in report.rows)

    def test_two_roots(self):
        fld = make_field(2, 3, 64)
        one = CycloElement.from_int(fld, 1)
        z = CycloElement.zeta(fld)
        report = exp_sum_decay_check([(one, z), (one, z**3)], 50)
        assert report.all_ok
