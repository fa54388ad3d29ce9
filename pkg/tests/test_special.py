import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special as sp

from fraccalc.axioms import gamma_by_quadrature
from fraccalc.errors import AccuracyError, DomainError
from fraccalc.special import (
    GAMMA_OVERFLOW_X,
    fractional_sum_kernel,
    gamma,
    gen_binomial,
    gl_weights,
    log_gamma,
    mittag_leffler,
)


class TestGamma:
    def test_unit(self):
        assert abs(gamma(1) - 1.0) <= 1e-14

    def test_factorial_five(self):
        assert gamma(5) == pytest.approx(24.0, rel=1e-12)

    def test_half_matches_quadrature(self):
        # independent route: integrate t^-1/2 e^-t with an algebraic-weight rule
        q, bound = gamma_by_quadrature(0.5)
        assert bound < 1e-10
        assert gamma(0.5) == pytest.approx(1.7724538509, abs=1e-10)
        assert abs(gamma(0.5) - q) <= 1e-10

    @pytest.mark.parametrize("z", [0.5, 1.5, 2.5, 4.0, 7.25])
    def test_against_quadrature(self, z):
        q, bound = gamma_by_quadrature(z)
        assert abs(gamma(z) - q) <= 1e-8

    @pytest.mark.parametrize("k", range(16))
    def test_factorials(self, k):
        assert gamma(k + 1.0) == pytest.approx(math.factorial(k), rel=1e-12)

    def test_real_input_gives_real_output(self):
        assert isinstance(gamma(3.7), float)
        assert isinstance(gamma(3.7 + 0j), complex)
        assert abs(gamma(3.7 + 0j).imag) < 1e-13
        assert gamma(3.7 + 0j).real == pytest.approx(gamma(3.7), rel=1e-13)

    @pytest.mark.parametrize("z", [0, -1, -2, -10, 0j, -3 + 0j])
    def test_poles(self, z):
        with pytest.raises(DomainError, match="pole"):
            gamma(z)

    def test_overflow_threshold(self):
        assert math.isfinite(gamma(171.5))
        with pytest.raises(OverflowError):
            gamma(GAMMA_OVERFLOW_X + 0.01)
        with pytest.raises(OverflowError):
            gamma(200 + 1j)

    def test_negative_real_reflection(self):
        for x in (-0.5, -1.5, -2.75, -10.3):
            assert gamma(x) == pytest.approx(math.gamma(x), rel=1e-12)

    @settings(max_examples=200, deadline=None)
    @given(st.floats(0.1, 20.0), st.floats(-10.0, 10.0))
    def test_pseudo_recurrence(self, re, im):
        z = complex(re, im)
        lhs = gamma(z + 1)
        assert abs(lhs - z * gamma(z)) / abs(lhs) <= 1e-11

    @settings(max_examples=100, deadline=None)
    @given(st.floats(-15.0, 20.0), st.floats(-10.0, 10.0))
    def test_against_mpmath(self, re, im):
        z = complex(re, im)
        if abs(z - round(re)) < 1e-3 and round(re) <= 0:
            return
        ref = complex(mpmath.gamma(mpmath.mpc(re, im)))
        assert abs(gamma(z) - ref) <= 1e-12 * abs(ref)


class TestLogGamma:
    def test_small_integers(self):
        assert abs(log_gamma(1)) < 1e-15
        assert abs(log_gamma(2)) < 1e-15

    def test_factorial_ten(self):
        assert log_gamma(11) == pytest.approx(math.log(3628800), abs=1e-12)
        assert log_gamma(11) == pytest.approx(15.1044125731, abs=1e-10)

    @pytest.mark.parametrize("x", [1e-8, 0.1, 0.49, 0.5, 3.3, 99.5, 170.0])
    def test_exp_consistency(self, x):
        assert math.exp(log_gamma(x)) == pytest.approx(gamma(x), rel=1e-12)

    @pytest.mark.parametrize("x", [500.0, 1e4, 1e6])
    def test_large(self, x):
        assert log_gamma(x) == pytest.approx(math.lgamma(x), rel=1e-14)

    @pytest.mark.parametrize("x", [0.0, -1.0, -0.5])
    def test_domain(self, x):
        with pytest.raises(DomainError):
            log_gamma(x)


class TestBinomial:
    def test_empty_product(self):
        assert gen_binomial(0.37, 0) == 1.0
        assert gen_binomial(-4.2, 0) == 1.0

    def test_integer(self):
        assert gen_binomial(3, 2) == 3.0
        assert gen_binomial(3, 5) == 0.0

    def test_half(self):
        # 0.5 * (-0.5) / 2!
        assert gen_binomial(0.5, 2) == pytest.approx(-0.125, abs=1e-16)

    @pytest.mark.parametrize("v", [1.3, 2.7, 5.5])
    def test_gamma_ratio_consistency(self, v):
        for k in range(21):
            log_ratio = sp.gammaln(v + 1) - sp.gammaln(k + 1) - sp.gammaln(v - k + 1)
            ratio = sp.gammasgn(v - k + 1) * math.exp(log_ratio)
            assert gen_binomial(v, k) == pytest.approx(ratio, rel=1e-9)

    def test_negative_k(self):
        with pytest.raises(DomainError):
            gen_binomial(1.0, -1)


class TestGLWeights:
    def test_half(self):
        w = gl_weights(0.5, 2)
        np.testing.assert_allclose(w.weights, [1.0, -0.5, -0.125], rtol=0, atol=1e-16)
        assert len(w) == 3 and w.order == 0.5

    def test_first_difference(self):
        assert list(gl_weights(1, 3).weights) == [1.0, -1.0, 0.0, 0.0]

    def test_identity(self):
        assert list(gl_weights(0, 2).weights) == [1.0, 0.0, 0.0]

    @pytest.mark.parametrize("v", [-1.5, -0.5, 0.3, 0.5, 1.7, 2.0])
    def test_recurrence_and_binomial(self, v):
        w = gl_weights(v, 40).weights
        assert w[0] == 1.0
        for k in range(1, 41):
            assert w[k] == pytest.approx(w[k - 1] * (k - 1 - v) / k, rel=1e-15, abs=0)
            assert w[k] == pytest.approx((-1) ** k * gen_binomial(v, k), rel=1e-12, abs=1e-300)

    @pytest.mark.parametrize("m", [0, 1, 2, 3, 5])
    def test_integer_order_terminates(self, m):
        w = gl_weights(float(m), 12).weights
        assert np.all(w[m + 1 :] == 0.0)
        assert np.all(w[: m + 1] != 0.0)

    def test_partial_sums_shrink(self):
        w = gl_weights(0.5, 1024).weights
        assert abs(w.sum()) < abs(w[:65].sum())
        partial = np.abs(np.cumsum(w))[1:]
        assert np.all(np.diff(partial) <= 0)

    def test_read_only(self):
        with pytest.raises(ValueError):
            gl_weights(0.5, 3).weights[0] = 2.0

    def test_fractional_sum_kernel(self):
        np.testing.assert_allclose(fractional_sum_kernel(0.5, 3), [1.0, 0.5, 0.375, 0.3125], atol=1e-16)


def _ml_reference(v, x):
    # 60-digit series summed until terms are negligible past the peak
    with mpmath.workdps(60):
        total, j, prev = mpmath.mpf(0), 0, mpmath.mpf(0)
        while True:
            term = mpmath.mpf(x) ** j / mpmath.gamma(v * j + 1)
            total += term
            if j > 10 and abs(term) < abs(prev) and abs(term) < mpmath.mpf(10) ** -40 * (1 + abs(total)):
                return float(total)
            prev, j = term, j + 1


class TestMittagLeffler:
    def test_exponential(self):
        assert mittag_leffler(1.0, 1.0) == pytest.approx(math.e, abs=1e-12)

    def test_zero_argument(self):
        assert mittag_leffler(0.5, 0.0) == 1.0

    @pytest.mark.parametrize("x", [-3.0, -1.0, -0.2, 0.0, 0.5, 1.0, 2.0])
    def test_half_order_erfc_identity(self, x):
        expected = math.exp(x * x) * sp.erfc(-x)
        assert mittag_leffler(0.5, x) == pytest.approx(expected, abs=1e-10)

    def test_half_order_at_one(self):
        # e * erfc(-1)
        assert mittag_leffler(0.5, 1.0) == pytest.approx(5.0089800808, abs=1e-9)

    @pytest.mark.parametrize("v", [0.25, 0.5, 0.75, 1.0, 1.5, 2.5])
    @pytest.mark.parametrize("x", [-5.0, -2.0, -1.0, -0.3, 0.7, 2.0, 5.0])
    def test_against_high_precision(self, v, x):
        ref = _ml_reference(v, x)
        try:
            val = mittag_leffler(v, x)
        except AccuracyError:
            # only the cancellation-dominated corner may refuse
            assert x < 0 and v <= 0.5
            return
        assert abs(val - ref) <= 1e-10 * max(1.0, abs(ref))

    def test_cancellation_is_reported(self):
        with pytest.raises(AccuracyError):
            mittag_leffler(0.25, -5.0)

    def test_domain(self):
        with pytest.raises(DomainError):
            mittag_leffler(0.0, 1.0)
