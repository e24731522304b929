import math

import mpmath as mp
import numpy as np
import pytest

from hardyops.coupling import (DomainError, branch_upper,
                               coupling_C, exponent_p, gamma_closed,
                               gamma_integral, lambda_star, lambda_zero,
                               make_coupling, normalization_A,
                               normalization_A1_reduced)

mp.mp.dps = 40


def mp_A(d, alpha):
    a = mp.mpf(alpha)
    return float(a / (2 ** (1 - a) * mp.pi ** (mp.mpf(d) / 2))
                 * mp.gamma((d + a) / 2) / mp.gamma(1 - a / 2))


class TestNormalization:
    def test_one_dimensional_anchor(self):
        assert normalization_A(1, 1.0) == pytest.approx(1.0 / math.pi, rel=1e-13)

    def test_reduced_form_agreement(self):
        for alpha in (0.5, 1.0, 1.3, 1.9):
            assert normalization_A(1, alpha) == pytest.approx(
                normalization_A1_reduced(alpha), rel=1e-12)

    def test_higher_dimension_oracle(self):
        assert normalization_A(3, 1.5) == pytest.approx(mp_A(3, 1.5), rel=1e-12)
        assert normalization_A(1, 0.5) == pytest.approx(mp_A(1, 0.5), rel=1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            normalization_A(1, 2.0)
        with pytest.raises(DomainError):
            normalization_A(0, 1.0)


class TestLambdaStar:
    def test_anchors(self):
        assert abs(lambda_star(1.0)) <= 1e-12
        assert lambda_star(2.0) == -0.25
        assert lambda_star(0.5) < 0.0
        assert lambda_star(1.7) < 0.0

    def test_oracle(self):
        a = mp.mpf("0.5")
        g = mp.gamma((1 + a) / 2)
        ref = float(-(g / mp.pi) * (g - 2 ** (a - 1) * mp.sqrt(mp.pi)
                                    / mp.gamma(1 - a / 2)))
        assert lambda_star(0.5) == pytest.approx(ref, rel=1e-13)


class TestCouplingFunction:
    def test_second_order_closed_form(self):
        for p in np.linspace(-0.99, 5.99, 400):
            assert abs(coupling_C(2.0, p) - p * (p - 1.0)) <= 1e-11

    def test_order_one_cotangent_form(self):
        for p in (-0.7, -0.2, 0.3, 0.76, 0.93):
            ref = (1.0 - math.pi * p / math.tan(math.pi * p)) / math.pi
            assert coupling_C(1.0, p) == pytest.approx(ref, rel=1e-12)
        assert abs(coupling_C(1.0, 1e-13)) <= 1e-12

    def test_zeros(self):
        for alpha in (0.7, 1.6):
            assert abs(coupling_C(alpha, 0.0)) <= 1e-12
            assert abs(coupling_C(alpha, alpha - 1.0)) <= 1e-12

    def test_minimum_is_sharp_constant(self):
        for alpha in (0.5, 1.5):
            assert coupling_C(alpha, 0.5 * (alpha - 1.0)) == pytest.approx(
                lambda_star(alpha), abs=1e-12)

    def test_symmetry_property(self):
        rng = np.random.default_rng(0)
        for _ in range(500):
            alpha = rng.uniform(0.05, 2.0)
            M = branch_upper(alpha)
            p = rng.uniform(0.5 * (alpha - 1.0), min(M, 6.0) - 1e-3)
            q = alpha - 1.0 - p
            if not -1.0 < q < M:
                continue
            assert abs(coupling_C(alpha, p) - coupling_C(alpha, q)) <= 1e-10

    def test_monotone_and_divergent(self):
        for alpha in (0.4, 1.0, 1.7):
            grid = np.linspace(0.5 * (alpha - 1.0), alpha - 1e-3, 200)
            vals = [coupling_C(alpha, p) for p in grid]
            assert all(b > a for a, b in zip(vals, vals[1:]))
            assert coupling_C(alpha, alpha - 1e-3) > 1e2 * abs(lambda_star(alpha))

    def test_domain(self):
        with pytest.raises(DomainError):
            coupling_C(1.5, 1.5)
        with pytest.raises(DomainError):
            coupling_C(1.5, -1.0)


class TestGammaFunctionOfP:
    def test_trivial_zeros(self):
        for alpha in (0.8, 1.5):
            assert abs(gamma_integral(alpha, 0.0)) <= 1e-10
            assert abs(gamma_integral(alpha, alpha - 1.0)) <= 1e-10
        assert abs(gamma_closed(1.5, 0.0)) <= 1e-12

    def test_integral_against_fixed_quadrature_oracle(self):
        alpha, p = mp.mpf("0.8"), mp.mpf("0.3")
        ref = float(mp.quad(lambda t: (t ** p - 1) * (1 - t ** (alpha - p - 1))
                            / (1 - t) ** (1 + alpha), [0, 1]))
        assert gamma_integral(0.8, 0.3) == pytest.approx(ref, abs=1e-9)

    def test_closed_matches_integral(self):
        rng = np.random.default_rng(1)
        for _ in range(40):
            alpha = rng.uniform(0.05, 1.95)
            if abs(alpha - 1.0) < 5e-2:
                continue
            p = rng.uniform(0.5 * (alpha - 1.0), alpha - 1e-2)
            assert gamma_closed(alpha, p) == pytest.approx(
                gamma_integral(alpha, p), abs=1e-8)
        with pytest.raises(DomainError):
            gamma_closed(1.0, 0.3)

    def test_normalized_identity_with_coupling(self):
        # C(p) = A(1,-alpha) gamma(alpha, p)
        val = coupling_C(0.6, 0.25) / normalization_A(1, 0.6)
        assert gamma_closed(0.6, 0.25) == pytest.approx(val, rel=1e-11)
        rng = np.random.default_rng(2)
        for _ in range(60):
            alpha = rng.uniform(0.05, 1.95)
            if abs(alpha - 1.0) < 1e-3:
                continue
            p = rng.uniform(0.5 * (alpha - 1.0), alpha - 1e-2)
            lhs = normalization_A(1, alpha) * gamma_integral(alpha, p)
            assert lhs == pytest.approx(coupling_C(alpha, p), abs=1e-8)
        # at alpha = 1 compare against the cotangent form instead
        for p in (0.2, 0.6):
            lhs = normalization_A(1, 1.0 - 1e-9) * gamma_integral(1.0 - 1e-9, p)
            ref = (1.0 - math.pi * p / math.tan(math.pi * p)) / math.pi
            assert lhs == pytest.approx(ref, abs=1e-6)


class TestExponentInversion:
    def test_second_order_closed_form(self):
        for lam in (-0.25, 0.0, 2.0):
            ref = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * lam))
            assert exponent_p(2.0, lam) == pytest.approx(ref, abs=1e-11)

    def test_zero_coupling(self):
        for alpha in (0.5, 1.7):
            assert exponent_p(alpha, 0.0) == pytest.approx(
                max(alpha - 1.0, 0.0), abs=1e-9)

    def test_sharp_constant_maps_to_branch_start(self):
        for alpha in (0.5, 1.2, 2.0):
            assert exponent_p(alpha, lambda_star(alpha)) == 0.5 * (alpha - 1.0)

    def test_round_trip_property(self):
        for alpha in (0.5, 1.0, 1.4, 2.0):
            lo = lambda_star(alpha)
            for lam in np.linspace(lo, 50.0, 200):
                p = exponent_p(alpha, float(lam))
                resid = abs(coupling_C(alpha, p) - lam)
                assert resid <= 1e-10 * max(1.0, abs(lam))

    def test_below_sharp_rejected(self):
        with pytest.raises(DomainError):
            exponent_p(1.5, lambda_star(1.5) - 1e-6)


class TestLambdaZero:
    def test_one_dimensional_closed_form(self):
        assert lambda_zero(1, 1.0) == pytest.approx(1.0 / math.pi, rel=1e-12)
        ref = math.sin(math.pi / 4.0) * math.gamma(0.5) / math.pi
        assert lambda_zero(1, 0.5) == pytest.approx(ref, rel=1e-12)

    def test_defining_integral_quadrature(self):
        # A(1,-a) int_{-inf}^0 |1 - y|^{-1-a} dy must equal lambda_zero
        for alpha in (0.6, 1.3):
            ref = float(normalization_A(1, alpha)
                        * mp.quad(lambda y: (1 - y) ** (-1 - mp.mpf(alpha)),
                                  [-mp.inf, 0]))
            assert lambda_zero(1, alpha) == pytest.approx(ref, rel=1e-10)

    def test_dimension_independence_and_d2_quadrature(self):
        # reduction to the Beta-type integral is d-independent
        assert lambda_zero(2, 1.2) == pytest.approx(lambda_zero(1, 1.2), rel=1e-12)
        alpha = mp.mpf("1.2")
        inner = mp.quad(lambda u: 1 / (1 + u ** 2) ** ((2 + alpha) / 2),
                        [0, mp.inf])
        outer = mp.quad(lambda h: h ** (-1 - alpha), [1, mp.inf])
        ref = float(mp_A(2, 1.2) * 2 * inner * outer)
        assert lambda_zero(2, 1.2) == pytest.approx(ref, rel=1e-10)

    def test_positive(self):
        for alpha in (0.2, 1.0, 1.9):
            assert lambda_zero(1, alpha) > 0.0


class TestCouplingParams:
    def test_construction_and_invariants(self):
        cp = make_coupling(1, 1.5, 1.0)
        cp.check()
        der = cp.derived
        assert der.p0 == 0.5
        assert der.q == min(cp.p, 0.5)
        assert der.r >= 0.0
        assert cp.lambda_zero is not None and cp.lambda_zero > 0.0

    def test_second_order_has_no_comparison_constant(self):
        cp = make_coupling(1, 2.0, 0.3)
        assert cp.lambda_zero is None

    def test_derived_exponent_window(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            alpha = rng.uniform(0.05, 2.0)
            lam = rng.uniform(lambda_star(alpha), 20.0)
            der = make_coupling(1, min(alpha, 2.0), lam).derived
            assert der.q <= make_coupling(1, min(alpha, 2.0), lam).p + 1e-12
            assert 0.0 <= der.r < 0.5
