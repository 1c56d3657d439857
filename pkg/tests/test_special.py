from math import factorial, pi

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special as scyspecial

from shbinaural.special import (DomainError, assoc_legendre, legendre_table, sph_bessel_j,
                                sph_bessel_j_prime, sph_hankel1, sph_hankel1_prime,
                                sph_hankel2, sph_hankel2_prime)


def rodrigues(n, m, mu):
    """P_n^m from the Rodrigues formula, evaluated symbolically."""
    x = sympy.Symbol("x")
    p_n = sympy.diff((x ** 2 - 1) ** n, x, n) / (2 ** n * sympy.factorial(n))
    expr = (-1) ** m * (1 - x ** 2) ** sympy.Rational(m, 2) * sympy.diff(p_n, x, m)
    return float(expr.subs(x, sympy.Rational(str(mu))))


def bessel_series(n, x, terms=30):
    """j_n(x) = sum_k (-1)^k x^(n+2k) / (2^k k! (2n+2k+1)!!)."""
    total = 0.0
    for k in range(terms):
        dfact = 1
        for j in range(2 * n + 2 * k + 1, 0, -2):
            dfact *= j
        total += (-1) ** k * x ** (n + 2 * k) / (2 ** k * factorial(k) * dfact)
    return total


class TestAssocLegendre:
    def test_examples(self):
        assert assoc_legendre(0, 0, 0.3) == 1.0
        assert assoc_legendre(1, 0, 0.5) == 0.5
        assert assoc_legendre(1, 1, 0.0) == pytest.approx(-1.0, abs=1e-15)

    @pytest.mark.parametrize("n", range(7))
    @pytest.mark.parametrize("mu", [-0.9, -0.25, 0.0, 0.4, 0.75])
    def test_matches_rodrigues_formula(self, n, mu):
        for m in range(n + 1):
            assert assoc_legendre(n, m, mu) == pytest.approx(rodrigues(n, m, mu),
                                                             rel=1e-12, abs=1e-13)

    def test_matches_scipy_lpmv(self):
        mu = np.linspace(-1, 1, 41)
        P = legendre_table(20, mu)
        for n in range(21):
            for m in range(n + 1):
                np.testing.assert_allclose(P[n, m], scyspecial.lpmv(m, n, mu),
                                           rtol=1e-10, atol=1e-12 * abs(P[n, m]).max())

    def test_poles(self):
        for n in range(1, 10):
            for m in range(1, n + 1):
                assert assoc_legendre(n, m, 1.0) == 0.0
                assert assoc_legendre(n, m, -1.0) == 0.0
        assert np.all(legendre_table(12, np.linspace(-1, 1, 5))[0, 0] == 1.0)

    @settings(max_examples=200, deadline=None)
    @given(n=st.integers(1, 30), data=st.data(), mu=st.floats(-1, 1))
    def test_recurrence_in_degree(self, n, data, mu):
        m = data.draw(st.integers(0, n - 1))
        P = legendre_table(n + 1, mu)
        lhs = (2 * n + 1) * mu * P[n, m]
        rhs = (n - m + 1) * P[n + 1, m] + (n + m) * P[n - 1, m]
        scale = max(abs((n - m + 1) * P[n + 1, m]), abs((n + m) * P[n - 1, m]), 1e-300)
        assert abs(lhs - rhs) <= 1e-10 * scale

    @pytest.mark.parametrize("args", [(2, 3, 0.1), (2, -1, 0.1), (2, 1, 1.5), (-1, 0, 0.0)])
    def test_domain_errors(self, args):
        with pytest.raises(DomainError):
            assoc_legendre(*args)

    def test_degree_cap(self):
        legendre_table(64, 0.3)
        with pytest.raises(DomainError):
            legendre_table(65, 0.3)


class TestSphericalBessel:
    def test_small_argument_and_zero(self):
        assert sph_bessel_j(0, 0.0) == 1.0
        assert sph_bessel_j(3, 0.0) == 0.0
        assert sph_bessel_j(0, 1e-12) == pytest.approx(1.0, abs=1e-15)

    def test_j0_zero_at_pi(self):
        assert abs(sph_bessel_j(0, pi)) < 1e-12

    @pytest.mark.parametrize("n", range(0, 12))
    @pytest.mark.parametrize("x", [0.05, 0.3, 1.0, 1.5, 1.99])
    def test_power_series_oracle(self, n, x):
        assert sph_bessel_j(n, x) == pytest.approx(bessel_series(n, x), rel=1e-12)

    def test_n2_at_one(self):
        # frozen from the 30-term series
        assert sph_bessel_j(2, 1.0) == pytest.approx(bessel_series(2, 1.0), rel=1e-14)
        assert bessel_series(2, 1.0) == pytest.approx(0.06203505201137386, rel=1e-14)

    def test_large_argument_asymptote(self):
        x = 1e4
        for n in (0, 5, 32):
            assert sph_bessel_j(n, x) == pytest.approx(np.sin(x - n * pi / 2) / x,
                                                       abs=n * n / x ** 2 + 1e-15)

    def test_negative_argument_rejected(self):
        with pytest.raises(DomainError):
            sph_bessel_j(1, -1.0)


class TestHankel:
    def test_h0_closed_form(self):
        assert sph_hankel2(0, 1.0) == pytest.approx(1j * np.exp(-1j), abs=1e-15)
        x = np.linspace(0.1, 20, 50)
        np.testing.assert_allclose(sph_hankel2(0, x), 1j * np.exp(-1j * x) / x, rtol=1e-13)

    def test_first_kind_is_conjugate(self):
        assert sph_hankel1(4, 5.5) == np.conj(sph_hankel2(4, 5.5))
        assert sph_hankel1_prime(4, 5.5) == pytest.approx(np.conj(sph_hankel2_prime(4, 5.5)))

    def test_wronskian_example(self):
        n, x = 3, 2.7
        w = sph_bessel_j(n, x) * sph_hankel2_prime(n, x) - sph_bessel_j_prime(n, x) * sph_hankel2(n, x)
        assert w == pytest.approx(-1j / x ** 2, rel=1e-12)

    @pytest.mark.parametrize("n", range(17))
    @pytest.mark.parametrize("x", [0.01, 0.1, 1.0, 10.0, 100.0])
    def test_wronskian(self, n, x):
        w = sph_bessel_j(n, x) * sph_hankel2_prime(n, x) - sph_bessel_j_prime(n, x) * sph_hankel2(n, x)
        assert abs(w - (-1j / x ** 2)) <= 1e-9 * abs(1 / x ** 2)

    @pytest.mark.parametrize("n", [0, 1, 4, 9])
    def test_derivative_finite_difference(self, n):
        x, h = 2.3, 1e-5
        fd = (sph_hankel2(n, x + h) - sph_hankel2(n, x - h)) / (2 * h)
        assert sph_hankel2_prime(n, x) == pytest.approx(fd, rel=1e-8)
        fd = (sph_bessel_j(n, x + h) - sph_bessel_j(n, x - h)) / (2 * h)
        assert sph_bessel_j_prime(n, x) == pytest.approx(fd, rel=1e-7, abs=1e-12)

    @pytest.mark.parametrize("func", [sph_hankel2, sph_hankel1, sph_hankel2_prime,
                                      sph_bessel_j_prime])
    def test_zero_argument_is_error(self, func):
        with pytest.raises(DomainError):
            func(2, 0.0)
