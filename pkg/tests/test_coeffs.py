"""Coefficient generation against published values and independent recurrences."""

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st
from mpmath import mp, mpf

from envasym import bernoulli_even, beta, beta_hat, beta_tilde, zeta_even
from envasym.coeffs import coefficient_table

# Exact table for k = 0..6, checked against the published values digit for digit.
GOLDEN = {
    "beta": [
        Fraction(1, 12),
        Fraction(1, 360),
        Fraction(1, 1260),
        Fraction(1, 1680),
        Fraction(1, 1188),
        Fraction(691, 360360),
        Fraction(1, 156),
    ],
    "beta-tilde": [
        Fraction(1, 8),
        Fraction(1, 192),
        Fraction(1, 640),
        Fraction(17, 14336),
        Fraction(31, 18432),
        Fraction(691, 180224),
        Fraction(5461, 425984),
    ],
    "beta-hat": [
        Fraction(1, 24),
        Fraction(7, 2880),
        Fraction(31, 40320),
        Fraction(127, 215040),
        Fraction(511, 608256),
        Fraction(1414477, 738017280),
        Fraction(8191, 1277952),
    ],
}


def bernoulli_oracle(n: int) -> Fraction:
    """Full defining recurrence sum_{j=0}^{n} C(n+1, j) B_j = 0, all indices.

    Deliberately includes the odd indices the production code skips.
    """
    table = [Fraction(1)]
    for m in range(1, n + 1):
        acc = sum(comb(m + 1, j) * table[j] for j in range(m))
        table.append(-acc / (m + 1))
    return table[n]


def von_staudt_clausen_denominator(two_m: int) -> int:
    def is_prime(p):
        return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))

    result = 1
    for p in range(2, two_m + 2):
        if is_prime(p) and two_m % (p - 1) == 0:
            result *= p
    return result


@pytest.mark.parametrize("family", sorted(GOLDEN))
def test_golden_table(family):
    assert coefficient_table(family, 6) == GOLDEN[family]


def test_bernoulli_small_values():
    assert bernoulli_even(1) == Fraction(1, 6)
    assert bernoulli_even(2) == Fraction(-1, 30)


def test_bernoulli_b12_against_independent_recurrence():
    expected = bernoulli_oracle(12)
    assert bernoulli_even(6) == expected
    assert expected == Fraction(-691, 2730)
    assert expected.denominator == von_staudt_clausen_denominator(12)


@pytest.mark.parametrize("m", range(1, 26))
def test_von_staudt_clausen_denominators(m):
    assert bernoulli_even(m).denominator == von_staudt_clausen_denominator(2 * m)


def test_bernoulli_matches_full_recurrence_through_b40():
    for m in range(1, 21):
        assert bernoulli_even(m) == bernoulli_oracle(2 * m)


def test_bernoulli_rejects_m_below_one():
    with pytest.raises(ValueError):
        bernoulli_even(0)
    with pytest.raises(ValueError):
        bernoulli_even(-3)


def test_linear_dependence_through_k50():
    for k in range(51):
        assert beta_tilde(k) == beta(k) + beta_hat(k)
        assert beta_tilde(k) == (2 - Fraction(1, 2 ** (2 * k + 1))) * beta(k)
        assert beta_hat(k) == (1 - Fraction(1, 2 ** (2 * k + 1))) * beta(k)


def test_positivity_and_reduced_form_through_k50():
    for k in range(51):
        for value in (beta(k), beta_tilde(k), beta_hat(k)):
            assert value > 0
            assert value.denominator >= 1  # Fraction keeps gcd = 1 by construction


@given(st.integers(min_value=0, max_value=150))
def test_linear_dependence_property(k):
    assert beta_tilde(k) == beta(k) + beta_hat(k)
    assert beta(k) > 0 and beta_hat(k) > 0


def test_zeta_even_euler_values():
    with mp.workprec(320):
        assert abs(zeta_even(0, 256) - mp.pi**2 / 6) < mpf(2) ** -250
        assert abs(zeta_even(1, 256) - mp.pi**4 / 90) < mpf(2) ** -250


def test_zeta_even_k2_against_independent_evaluation():
    # pi^6/945 evaluated at well above the requested precision
    with mp.workprec(400):
        independent = mp.pi**6 / 945
        assert abs(zeta_even(2, 256) - independent) < mpf(2) ** -250


def test_zeta_even_decreasing_toward_one():
    values = [zeta_even(k, 128) for k in range(12)]
    with mp.workprec(160):
        assert values[0] <= mp.pi**2 / 6 + mpf(2) ** -120
    for a, b in zip(values, values[1:]):
        assert a > b > 1


def test_zeta_even_rejects_bad_arguments():
    with pytest.raises(ValueError):
        zeta_even(-1)
    with pytest.raises(ValueError):
        zeta_even(0, precision=32)


def test_concurrent_readers_see_fresh_values():
    from concurrent.futures import ThreadPoolExecutor

    expected = [bernoulli_oracle(2 * m) for m in range(1, 41)]
    with ThreadPoolExecutor(max_workers=8) as pool:
        results = list(pool.map(bernoulli_even, list(range(1, 41)) * 4))
    assert results == expected * 4
