"""Oracle module: exact big-integer logs and quadrature cross-identities."""

import math
from fractions import Fraction

import pytest
from mpmath import mp, mpf

from envasym import (
    DomainError,
    QuadratureNonConvergence,
    QuadratureSpec,
    ThetaFamily,
    binet_J,
    binet_J_tilde,
    coefficient_quadrature,
    exact_ln_central_binomial,
    exact_ln_factorial,
    exact_ln_gamma_half,
    remainder_quadrature,
    theta_ratio,
)
from envasym.coeffs import beta, beta_hat, beta_tilde

SPEC = QuadratureSpec(precision=256)
TIGHT = mpf(2) ** -200


def close(a, b, tol=TIGHT):
    with mp.workprec(320):
        return abs(a - b) <= tol * max(1, abs(b))


class TestExactLogs:
    def test_ln_factorial(self):
        assert exact_ln_factorial(0) == 0
        with mp.workprec(320):
            assert close(exact_ln_factorial(5), mp.log(120))
            assert close(exact_ln_factorial(20), mp.log(2432902008176640000))
            assert math.factorial(20) == 2432902008176640000

    def test_ln_central_binomial(self):
        with mp.workprec(320):
            assert close(exact_ln_central_binomial(1), mp.log(2))
            assert close(exact_ln_central_binomial(10), mp.log(184756))
            assert math.comb(20, 10) == 184756
            assert close(
                exact_ln_central_binomial(30), mp.log(mpf(math.comb(60, 30)))
            )

    def test_ln_gamma_half(self):
        with mp.workprec(320):
            assert close(exact_ln_gamma_half(0), mp.log(mp.pi) / 2)
            assert close(exact_ln_gamma_half(1), mp.log(mp.sqrt(mp.pi) / 2))
            expected = mp.log(
                mpf(math.factorial(10)) * mp.sqrt(mp.pi) / (4**5 * math.factorial(5))
            )
            assert close(exact_ln_gamma_half(5), expected)

    def test_preconditions(self):
        with pytest.raises(ValueError):
            exact_ln_factorial(-1)
        with pytest.raises(ValueError):
            exact_ln_central_binomial(0)
        with pytest.raises(ValueError):
            exact_ln_gamma_half(-2)


class TestBinetJ:
    def test_at_one_against_stirling_identity(self):
        # Gamma(1) = 1, so J(1) = 1 - ln(2 pi)/2
        with mp.workprec(320):
            assert close(binet_J(1, SPEC), 1 - mp.log(2 * mp.pi) / 2)

    def test_at_five_against_exact_factorial(self):
        with mp.workprec(320):
            z = mpf(5)
            expected = mp.log(24) - (
                (z - mpf(1) / 2) * mp.log(z) - z + mp.log(2 * mp.pi) / 2
            )
            assert close(binet_J(5, SPEC), expected)

    def test_at_ten_bracketed_by_first_partial_sums(self):
        value = binet_J(10, SPEC)
        lo = Fraction(1, 12) / 10 - Fraction(1, 360) / 1000
        hi = Fraction(1, 12) / 10
        with mp.workprec(320):
            assert mp.convert(lo) < value < mp.convert(hi)

    def test_error_estimate_is_small(self):
        value, err = binet_J(2, SPEC, error=True)
        assert err <= SPEC.effective_tol() * abs(value)

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            binet_J(0, SPEC)
        with pytest.raises(DomainError):
            binet_J(-3, SPEC)


class TestBinetJTilde:
    def test_at_one_equals_half_gamma_ratio(self):
        # J~(1) = ln(Gamma(3/2) / Gamma(1)) = ln(sqrt(pi)/2)
        with mp.workprec(320):
            assert close(binet_J_tilde(1, SPEC), mp.log(mp.sqrt(mp.pi) / 2))

    def test_decomposition_at_five(self):
        with mp.workprec(320):
            composed = binet_J(10, SPEC) - 2 * binet_J(5, SPEC)
            assert close(binet_J_tilde(5, SPEC), composed)

    @pytest.mark.parametrize("z", [1, 2, 5])
    def test_decomposition_grid(self, z):
        with mp.workprec(320):
            composed = binet_J(2 * z, SPEC) - 2 * binet_J(z, SPEC)
            assert close(binet_J_tilde(z, SPEC), composed)

    def test_at_ten_against_central_binomial(self):
        with mp.workprec(320):
            z = mpf(10)
            expected = exact_ln_central_binomial(10, 320) - (
                z * mp.log(4) - mp.log(mp.pi * z) / 2
            )
            assert close(binet_J_tilde(10, SPEC), expected)


class TestThetaRatio:
    def test_theta_approaches_one_from_below(self):
        values = [theta_ratio(ThetaFamily.THETA, 0, z, SPEC) for z in (1, 10, 100)]
        assert values[0] < values[1] < values[2] < 1

    @pytest.mark.parametrize("family", list(ThetaFamily))
    @pytest.mark.parametrize("k", [0, 1, 2])
    @pytest.mark.parametrize("z", [mpf("0.5"), 1, 5, 20])
    def test_strictly_inside_unit_interval(self, family, k, z):
        value, err = theta_ratio(family, k, z, SPEC, error=True)
        assert value - err > 0
        assert value + err < 1

    def test_theta_hat_consistency_with_remainder(self):
        # r^_0(1) = theta^_0(1) * (-1) * beta^_0
        with mp.workprec(320):
            lhs = remainder_quadrature(ThetaFamily.THETA_HAT, 0, 1, SPEC)
            rhs = -theta_ratio(ThetaFamily.THETA_HAT, 0, 1, SPEC) * mp.convert(
                beta_hat(0)
            )
            assert close(lhs, rhs)


class TestRemainderQuadrature:
    def test_zero_terms_is_whole_function(self):
        with mp.workprec(320):
            assert close(
                remainder_quadrature(ThetaFamily.THETA, 0, 5, SPEC), binet_J(5, SPEC)
            )

    def test_two_terms_at_five(self):
        with mp.workprec(320):
            expected = binet_J(5, SPEC) - (
                mp.convert(beta(0)) / 5 - mp.convert(beta(1)) / 125
            )
            assert close(remainder_quadrature(ThetaFamily.THETA, 2, 5, SPEC), expected)

    def test_tilde_one_term_at_ten(self):
        with mp.workprec(320):
            expected = binet_J_tilde(10, SPEC) + mp.convert(beta_tilde(0)) / 10
            assert close(
                remainder_quadrature(ThetaFamily.THETA_TILDE, 1, 10, SPEC), expected
            )

    @pytest.mark.parametrize("family", list(ThetaFamily))
    @pytest.mark.parametrize("k", [0, 1, 2])
    @pytest.mark.parametrize("z", [1, 5])
    def test_remainder_equals_theta_times_term(self, family, k, z):
        fn = {
            ThetaFamily.THETA: beta,
            ThetaFamily.THETA_TILDE: beta_tilde,
            ThetaFamily.THETA_HAT: beta_hat,
        }[family]
        with mp.workprec(320):
            rem = remainder_quadrature(family, k, z, SPEC)
            theta = theta_ratio(family, k, z, SPEC)
            term = mp.convert(fn(k)) / mpf(z) ** (2 * k + 1)
            assert close(rem, family.remainder_sign(k) * theta * term)


class TestCoefficientQuadrature:
    @pytest.mark.parametrize(
        "family,k,expected",
        [
            (ThetaFamily.THETA, 0, Fraction(1, 12)),
            (ThetaFamily.THETA_TILDE, 3, Fraction(17, 14336)),
            (ThetaFamily.THETA_HAT, 2, Fraction(31, 40320)),
        ],
    )
    def test_named_values(self, family, k, expected):
        with mp.workprec(320):
            got = coefficient_quadrature(family, k, SPEC)
            assert abs(got - mp.convert(expected)) <= mpf("1e-25") * mp.convert(expected)

    @pytest.mark.parametrize("family", list(ThetaFamily))
    @pytest.mark.parametrize("k", range(5))
    def test_matches_rational_to_1e25(self, family, k):
        fn = {
            ThetaFamily.THETA: beta,
            ThetaFamily.THETA_TILDE: beta_tilde,
            ThetaFamily.THETA_HAT: beta_hat,
        }[family]
        with mp.workprec(320):
            got = coefficient_quadrature(family, k, SPEC)
            want = mp.convert(fn(k))
            assert abs(got - want) / want <= mpf("1e-25")


class TestWeightLinearDependence:
    @pytest.mark.parametrize("eta", ["0.1", "0.5", "1", "2"])
    def test_pointwise(self, eta):
        with mp.workprec(288):
            e = mpf(eta)
            lhs = ThetaFamily.THETA.weight(e) + ThetaFamily.THETA_HAT.weight(e)
            rhs = ThetaFamily.THETA_TILDE.weight(e)
            assert abs(lhs - rhs) <= mpf(2) ** -230 * rhs

    @pytest.mark.parametrize("k", range(3))
    def test_coefficient_sums(self, k):
        with mp.workprec(320):
            total = coefficient_quadrature(
                ThetaFamily.THETA, k, SPEC
            ) + coefficient_quadrature(ThetaFamily.THETA_HAT, k, SPEC)
            combined = coefficient_quadrature(ThetaFamily.THETA_TILDE, k, SPEC)
            assert abs(total - combined) <= 2 * SPEC.effective_tol() * combined


class TestWeightAccuracyAtHighMoments:
    # eta^(2k) amplifies any absolute error floor in the weights at large
    # eta, so high k at high precision is the stress case for the
    # log1p/atanh evaluation paths
    @pytest.mark.parametrize("family", list(ThetaFamily))
    def test_k8_at_512_bits(self, family):
        fn = {
            ThetaFamily.THETA: beta,
            ThetaFamily.THETA_TILDE: beta_tilde,
            ThetaFamily.THETA_HAT: beta_hat,
        }[family]
        deep = QuadratureSpec(precision=512)
        with mp.workprec(600):
            got = coefficient_quadrature(family, 8, deep)
            want = mp.convert(fn(8))
            assert abs(got - want) / want <= mpf(2) ** -400


class TestQuadratureSpec:
    def test_tolerance_floor(self):
        spec = QuadratureSpec(precision=256, rel_tol=mpf("1e-100"))
        assert spec.effective_tol() == mpf(2) ** -224
        loose = QuadratureSpec(precision=256, rel_tol=mpf("1e-30"))
        assert loose.effective_tol() == mpf("1e-30")

    def test_level_cap_raises(self):
        starved = QuadratureSpec(precision=256, max_levels=2)
        with pytest.raises(QuadratureNonConvergence) as info:
            binet_J(mpf("3.75"), starved)
        assert info.value.value is not None
