"""qcalc: Gaussian binomials, q-Pochhammer, beta calculus and certified bounds."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpadic.padic import CycloElement, make_field
from qpadic.qcalc import (
    QPolynomial,
    beta,
    beta_range,
    check_beta_lower_bound,
    check_corollary_bound,
    log_p_bounds,
    poch_valuation_direct,
    poch_valuation_formula,
    q_binomial_poly,
    q_binomial_value,
    q_pochhammer,
    zq_coefficient,
    zq_coefficient_sequence,
)


def qq_poly(n):
    """(q; q)_n as an integer polynomial."""
    acc = QPolynomial((1,))
    for i in range(1, n + 1):
        acc = acc * QPolynomial(tuple([1] + [0] * (i - 1) + [-1]))
    return acc


class TestQBinomialPoly:
    def test_k_zero(self):
        assert q_binomial_poly(9, 0) == QPolynomial((1,))

    def test_4_2(self):
        assert q_binomial_poly(4, 2).coeffs == (1, 1, 2, 1, 1)

    def test_above_degree(self):
        assert q_binomial_poly(3, 5) == QPolynomial((0,))

    def test_classical_specialization(self):
        for n in range(21):
            for k in range(n + 1):
                assert q_binomial_poly(n, k).eval_int(1) == math.comb(n, k)

    def test_q_pascal_to_64(self):
        for n in range(64):
            for k in range(n + 1):
                lhs = q_binomial_poly(n + 1, k + 1)
                rhs = q_binomial_poly(n, k + 1) + q_binomial_poly(n, k).shift(n - k)
                assert lhs == rhs

    def test_symmetry_to_32(self):
        for n in range(33):
            for k in range(n + 1):
                assert q_binomial_poly(n, k) == q_binomial_poly(n, n - k)

    def test_product_formula_to_32(self):
        for n in range(0, 33, 4):
            for k in range(0, n + 1, 3):
                lhs = q_binomial_poly(n, k) * qq_poly(k) * qq_poly(n - k)
                assert lhs == qq_poly(n)

    def test_value_matches_poly(self, field23, rng):
        q = CycloElement.zeta(field23) + CycloElement.pi(field23) ** 2
        for n, k in [(5, 2), (7, 3), (9, 9), (6, 0), (4, 6)]:
            assert q_binomial_value(q, n, k).equals(q_binomial_poly(n, k).eval_element(q))


class TestPochhammer:
    def test_empty_product(self, field22):
        z = CycloElement.zeta(field22)
        assert q_pochhammer(z, z, 0).equals(CycloElement.from_int(field22, 1))

    def test_valuation_example(self, field22):
        z = CycloElement.zeta(field22)
        assert q_pochhammer(z, z, 2).valuation().value == Fraction(3, 2)

    def test_valuation_additivity(self, field32):
        z = CycloElement.zeta(field32)
        one = CycloElement.from_int(field32, 1)
        total = Fraction(0)
        zp = z
        for n in range(1, 7):
            total += (one - zp).valuation().value
            assert q_pochhammer(z, z, n).valuation().value == total
            zp = zp * z


class TestZqCoefficient:
    def test_k0_k1(self, field26):
        z = CycloElement.zeta(field26)
        q = z + CycloElement.pi(field26) ** 2
        assert zq_coefficient(z, q, 0).equals(CycloElement.from_int(field26, 1))
        assert zq_coefficient(z, q, 1).equals(z - CycloElement.from_int(field26, 1))

    def test_valuation_example(self, field26):
        z = CycloElement.zeta(field26)
        q = z + CycloElement.pi(field26) ** 2
        assert zq_coefficient(z, q, 3).valuation().value == Fraction(4, 32)

    def test_pochhammer_identity(self, field23):
        z = CycloElement.zeta(field23)
        q = z + CycloElement.pi(field23) ** 3
        qinv = q.invert()
        for k in (2, 5, 8):
            rhs = q_pochhammer(z, qinv, k) * q ** math.comb(k, 2)
            rhs = rhs.scale_int((-1) ** k)
            assert zq_coefficient(z, q, k).equals(rhs)

    def test_monotone_valuations_k200(self):
        fld = make_field(2, 3, 96)
        z = CycloElement.zeta(fld)
        q = z + CycloElement.pi(fld) ** 2
        seq = zq_coefficient_sequence(z, q, 200)
        vals = [c.valuation().expect_finite() for c in seq]
        assert all(v2 >= v1 for v1, v2 in zip(vals, vals[1:]))


class TestBeta:
    def test_small_values(self):
        assert beta(2, 2).value == 3
        assert beta(2, 4).value == 8
        assert beta(3, 3).value == 5

    def test_all_primes_at_one(self):
        assert all(beta(p, 1).value == 1 for p in (2, 3, 5, 7, 11))

    def test_range_matches_scalar(self):
        for p in (2, 3, 5):
            arr = beta_range(p, 2000)
            for n in (1, 2, 17, 100, 1999, 2000):
                assert arr[n - 1] == beta(p, n).value

    @given(st.integers(min_value=1, max_value=10**6))
    @settings(max_examples=200)
    def test_at_least_n(self, n):
        assert beta(2, n).value >= n

    def test_identity_form(self):
        # beta_p(n) = n + (p-1) sum_{k>=1} p^(k-1) floor(n / p^k)
        for p in (2, 5):
            for n in (1, 7, 64, 1000):
                rhs = n
                pk = p
                while pk <= n:
                    rhs += (p - 1) * (pk // p) * (n // pk)
                    pk *= p
                assert beta(p, n).value == rhs


class TestLogBounds:
    def test_exact_power(self):
        lo, hi = log_p_bounds(8, 2)
        assert lo == hi == 3

    def test_brackets(self):
        for p, n in [(2, 3), (3, 10), (5, 123456)]:
            lo, hi = log_p_bounds(n, p)
            assert lo <= Fraction(math.log(n, p)).limit_denominator(10**12) <= hi
            assert hi - lo <= Fraction(1, 64)


class TestBetaBounds:
    def test_n1(self):
        res = check_beta_lower_bound(2, 1)
        assert res.verdict and res.beta == 1

    def test_n4(self):
        res = check_beta_lower_bound(2, 4)
        assert res.verdict and res.beta == 8
        assert res.bound_upper == pytest.approx(-4, abs=1e-6)

    def test_sweep_sample(self):
        from qpadic.qcalc import check_beta_lower_bound_range

        for p in (2, 3, 5):
            failures, _ = check_beta_lower_bound_range(p, 20000)
            assert failures == []

    def test_corollary_example(self):
        res = check_corollary_bound(2, 13, 256)
        assert res.verdict and res.beta == 1280  # exact beta, compared against 512

    def test_corollary_2_11(self):
        res = check_corollary_bound(2, 12, 2**11)
        assert res.verdict

    def test_corollary_range_guard(self):
        with pytest.raises(ValueError):
            check_corollary_bound(2, 13, 100)


class TestPochValuationFormula:
    def test_examples(self):
        assert poch_valuation_formula(3, 2, 3) == Fraction(5, 6)
        assert poch_valuation_formula(2, 3, 4) == Fraction(2)
        assert poch_valuation_formula(5, 2, 1) == Fraction(1, 20)

    def test_range_guard(self):
        with pytest.raises(ValueError):
            poch_valuation_formula(2, 2, 4)

    def test_matches_direct_small(self):
        for p, N in [(2, 2), (2, 3), (3, 2)]:
            fld = make_field(p, N, 32)
            for n in range(1, p**N):
                assert poch_valuation_formula(p, N, n) == _direct_poch(fld, n)


def _direct_poch(fld, n):
    from qpadic.qcalc import q_pochhammer

    z = CycloElement.zeta(fld)
    return q_pochhammer(z, z, n).valuation().expect_finite()


def test_poch_valuation_direct_helper(field32):
    assert poch_valuation_direct(field32, 3) == Fraction(5, 6)
