import math
from itertools import combinations
from math import factorial

import numpy as np
import pytest
from numpy.testing import assert_allclose

from vandersphere.limits import (
    DegenerateExponents,
    DimensionGuard,
    LengthMismatch,
    ZeroNode,
    default_t_schedule,
    exponent_sum,
    factorial_diagonal,
    minor,
    minor_series_gn,
    ratio_limit,
    truncated_factorization,
)
from vandersphere.vandermonde import (
    IndexOutOfRange,
    build_generalized,
    det_general,
    det_vandermonde,
)


class TestFactorialDiagonal:
    def test_exact_entries(self):
        d = factorial_diagonal(21)
        for i in range(21):
            assert d[i] == 1.0 / factorial(i)
        # 1/0! equals 1/1!; strictly decreasing afterwards
        assert np.all(np.diff(d) <= 0)
        assert np.all(np.diff(d[1:]) < 0)

    def test_bad_size(self):
        with pytest.raises(ValueError):
            factorial_diagonal(0)


class TestTruncatedFactorization:
    def test_unit_nodes_give_ones(self):
        for k in (1, 3, 10):
            m = truncated_factorization([1.0, 1.0], [0.3, -2.0, 5.5], k)
            assert_allclose(m, np.ones((3, 2)), atol=1e-15)

    def test_partial_sum_of_e(self):
        m = truncated_factorization([math.e], [1.0], 3)
        # 1 + 1 + 1/2
        assert_allclose(m[0, 0], 2.5, rtol=1e-15)

    def test_entry_error_bounded_by_exponential_tail(self):
        x = np.array([2.0, 3.0])
        a = np.array([0.5, 1.5])
        ref = build_generalized(x, a)
        z = np.abs(np.outer(a, np.log(x)))
        for k in (5, 10, 20):
            approx = truncated_factorization(x, a, k)
            err = np.abs(approx - ref)
            tail = sum(z ** l / factorial(l) for l in range(k, 120))
            assert np.all(err <= tail * (1 + 1e-12) + 1e-15)

    def test_error_halves_geometrically(self):
        rng = np.random.default_rng(3)
        x = rng.uniform(0.5, 3.0, 3)
        a = rng.uniform(-1.5, 1.5, 3)
        z_max = np.abs(np.outer(a, np.log(x))).max()
        ref = build_generalized(x, a)
        errs = [
            np.abs(truncated_factorization(x, a, k) - ref).max()
            for k in range(1, 41)
        ]
        start = int(2 * z_max) + 1
        for k in range(start, 38):
            if errs[k - 1] < 1e-13:  # rounding floor reached
                break
            assert errs[k] <= 0.5 * errs[k - 1]
        assert errs[-1] < 1e-10

    def test_zero_node(self):
        with pytest.raises(ZeroNode):
            truncated_factorization([0.0, 1.0], [1.0], 5)

    def test_complex_branch_consistency(self):
        m = truncated_factorization([1.5, 2.5], [0.0, 1.0, 2.0], 40)
        assert np.abs(m.imag).max() < 1e-12


class TestMinor:
    def test_full_minor_is_determinant(self):
        rng = np.random.default_rng(0)
        m = rng.standard_normal((4, 4))
        assert_allclose(minor(m, (1, 2, 3, 4), (1, 2, 3, 4)), det_general(m), rtol=1e-14)

    def test_single_entry(self):
        m = np.arange(12.0).reshape(3, 4)
        assert minor(m, (2,), (3,)) == m[1, 2]

    def test_cauchy_binet(self):
        rng = np.random.default_rng(1)
        a = rng.standard_normal((2, 3))
        b = rng.standard_normal((3, 2))
        direct = det_general(a @ b)
        expansion = sum(
            minor(a, (1, 2), cols) * minor(b, cols, (1, 2))
            for cols in combinations((1, 2, 3), 2)
        )
        assert_allclose(expansion, direct, rtol=1e-12)

    def test_errors(self):
        m = np.eye(3)
        with pytest.raises(LengthMismatch):
            minor(m, (1, 2), (1,))
        with pytest.raises(IndexOutOfRange):
            minor(m, (0, 1), (1, 2))
        with pytest.raises(IndexOutOfRange):
            minor(m, (1, 4), (1, 2))
        with pytest.raises(IndexOutOfRange):
            minor(m, (2, 2), (1, 2))


class TestExponentSum:
    def test_identity_combination(self):
        assert exponent_sum((1, 2, 3)) == 3

    def test_singleton(self):
        assert exponent_sum((1,)) == 0

    def test_spread(self):
        assert exponent_sum((2, 4)) == 4

    def test_validation(self):
        with pytest.raises(IndexOutOfRange):
            exponent_sum((3, 2))


class TestMinorSeries:
    def test_two_by_two_exponential(self):
        sums = minor_series_gn([1.0, math.e], [0.0, 1.0], 30)
        assert abs(sums[-1] - (math.e - 1)) < 1e-8
        assert np.abs(sums.imag).max() < 1e-12

    def test_equal_nodes_vanish(self):
        sums = minor_series_gn([1.0, 1.0], [0.0, 1.0], 20)
        assert np.abs(sums).max() < 1e-15

    def test_ordinary_case_converges_to_product_formula(self):
        sums = minor_series_gn([1.0, 2.0, 3.0], [0.0, 1.0, 2.0], 30)
        assert abs(sums[-1] - 2.0) < 1e-8

    @pytest.mark.parametrize("n", [2, 3])
    def test_random_integer_exponents(self, n):
        rng = np.random.default_rng(n)
        for _ in range(5):
            x = rng.uniform(0.5, 2.0, n)
            a = np.arange(n, dtype=float)
            a[-1] += rng.integers(0, 2)
            ref = complex(det_general(build_generalized(x, a)))
            sums = minor_series_gn(x, a, 30)
            assert abs(sums[-1] - ref) < 1e-8

    def test_partial_sum_indexing(self):
        sums = minor_series_gn([1.0, 2.0], [0.0, 1.0], 10)
        assert sums.shape == (9,)  # k = 2..10

    def test_guards(self):
        with pytest.raises(DimensionGuard):
            minor_series_gn([1.0] * 5, [0, 1, 2, 3, 4], 10)
        with pytest.raises(ZeroNode):
            minor_series_gn([0.0, 1.0], [0, 1], 10)
        with pytest.raises(LengthMismatch):
            minor_series_gn([1.0, 2.0], [0, 1, 2], 10)
        with pytest.raises(ValueError):
            minor_series_gn([1.0, 2.0], [0, 1], 1)


RATIO_CASES = [
    # nodes, exponents, analytic limit
    ((1.0, math.e), (0.0, 1.0), 1.0),
    ((1.0, 4.0), (0.0, 1.0), math.log(4.0)),
    ((1.0, 2.0, 4.0), (0.0, 1.0, 2.0), math.log(2.0) ** 3),
]


class TestRatioLimit:
    @pytest.mark.parametrize("x,a,limit", RATIO_CASES)
    def test_limit_value(self, x, a, limit):
        report = ratio_limit(x, a)
        assert_allclose(report.limit_rhs.real, limit, rtol=1e-13)
        assert abs(report.limit_rhs.imag) < 1e-12

    def test_two_node_ratio_closed_form(self):
        report = ratio_limit([1.0, math.e], [0.0, 1.0])
        for t, r in zip(report.t_values, report.ratios):
            assert_allclose(r.real, math.expm1(t) / t, rtol=1e-9)

    @pytest.mark.parametrize("x,a,limit", RATIO_CASES)
    def test_first_order_convergence(self, x, a, limit):
        report = ratio_limit(x, a)
        errs = report.errors()
        ratios = errs[-6:-1] / errs[-5:]
        assert np.all(ratios >= 1.5) and np.all(ratios <= 2.5)
        assert errs[-1] / abs(limit) < 1e-4

    def test_leading_term_identity(self):
        x = np.array([1.0, 2.0, 4.0])
        a = np.array([0.0, 1.0, 2.0])
        report = ratio_limit(x, a, [1e-5, 1e-6])
        # g / t^M = ratio * v_n(a); compare with the analytic leading term
        lead = det_vandermonde(a) * report.limit_rhs
        got = report.ratios[-1] * det_vandermonde(a)
        assert abs(got - lead) / abs(lead) < 1e-4

    def test_series_crossover_flagged(self):
        report = ratio_limit([1.0, 2.0, 4.0], [0.0, 1.0, 2.0])
        assert report.series_used.any()
        # elimination everywhere coarse, series on the small-t tail
        assert not report.series_used[0]
        assert report.series_used[-1]

    def test_imaginary_parts_negligible_for_positive_nodes(self):
        report = ratio_limit([1.0, 2.0, 4.0], [0.0, 1.0, 2.0])
        assert np.abs(report.ratios.imag).max() < 1e-12

    def test_errors(self):
        with pytest.raises(DegenerateExponents):
            ratio_limit([1.0, 2.0], [1.0, 1.0])
        with pytest.raises(ZeroNode):
            ratio_limit([0.0, 2.0], [0.0, 1.0])
        with pytest.raises(LengthMismatch):
            ratio_limit([1.0, 2.0], [0.0, 1.0, 2.0])
        with pytest.raises(ValueError):
            ratio_limit([1.0, 2.0], [0.0, 1.0], [0.5, 1.0])  # increasing schedule

    def test_default_schedule(self):
        s = default_t_schedule()
        assert s[0] == 1.0 and s[-1] == 2.0 ** -20 and len(s) == 21
