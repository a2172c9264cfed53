"""Exact rational coefficients of the three enveloping expansions.

Three interrelated positive sequences drive everything else in the package:

* ``beta(k)``        coefficients of Binet's correction series for ln Gamma(z);
* ``beta_tilde(k)``  coefficients of the central-binomial series, equal to
  ``(2 - 2**-(2k+1)) * beta(k)``;
* ``beta_hat(k)``    coefficients of the ln Gamma(z + 1/2) (and de Moivre)
  series, equal to ``(1 - 2**-(2k+1)) * beta(k)``.

All values are exact ``fractions.Fraction`` objects built from Bernoulli
numbers; nothing here ever touches floating point except ``zeta_even``,
which maps the exact coefficients back to zeta values at even integers.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import comb

from mpmath import mp, mpf

from .precision import DEFAULT_PRECISION, MIN_PRECISION, round_to, working

__all__ = [
    "bernoulli_even",
    "beta",
    "beta_tilde",
    "beta_hat",
    "zeta_even",
    "coefficient_table",
    "COEFFICIENT_FAMILIES",
]

# Growable table of B_0, B_2, B_4, ... ; entries are immutable once appended,
# so concurrent readers only ever observe fully computed prefixes.
_BERNOULLI_EVEN: list[Fraction] = [Fraction(1)]
_BERNOULLI_LOCK = threading.Lock()


def _extend_bernoulli(upto: int) -> None:
    # Binomial recurrence sum_{j=0}^{n} C(n+1, j) B_j = 0 with B_0 = 1,
    # restricted to even indices (odd Bernoulli numbers vanish for n >= 3,
    # and the lone B_1 = -1/2 contributes the constant 1/2 below).
    with _BERNOULLI_LOCK:
        for m in range(len(_BERNOULLI_EVEN), upto + 1):
            n = 2 * m
            acc = Fraction(0)
            for i in range(m):
                acc += comb(n + 1, 2 * i) * _BERNOULLI_EVEN[i]
            _BERNOULLI_EVEN.append(Fraction(1, 2) - acc / (n + 1))


def bernoulli_even(m: int) -> Fraction:
    """Exact Bernoulli number B_{2m} for m >= 1 (B_2 = 1/6, B_4 = -1/30, ...)."""
    if m < 1:
        raise ValueError("bernoulli_even requires m >= 1")
    if m >= len(_BERNOULLI_EVEN):
        _extend_bernoulli(m)
    return _BERNOULLI_EVEN[m]


@lru_cache(maxsize=None)
def beta(k: int) -> Fraction:
    """Binet series coefficient (-1)^k B_{2k+2} / ((2k+1)(2k+2)); positive."""
    if k < 0:
        raise ValueError("beta requires k >= 0")
    value = (-1) ** k * bernoulli_even(k + 1) / ((2 * k + 1) * (2 * k + 2))
    assert value > 0
    return value


@lru_cache(maxsize=None)
def beta_tilde(k: int) -> Fraction:
    """Central-binomial series coefficient (2 - 2**-(2k+1)) * beta(k)."""
    if k < 0:
        raise ValueError("beta_tilde requires k >= 0")
    return (2 - Fraction(1, 2 ** (2 * k + 1))) * beta(k)


@lru_cache(maxsize=None)
def beta_hat(k: int) -> Fraction:
    """Half-shift series coefficient (1 - 2**-(2k+1)) * beta(k)."""
    if k < 0:
        raise ValueError("beta_hat requires k >= 0")
    return (1 - Fraction(1, 2 ** (2 * k + 1))) * beta(k)


def zeta_even(k: int, precision: int = DEFAULT_PRECISION) -> mpf:
    """zeta(2k+2) at the requested precision, derived from the exact beta(k).

    Uses zeta(2k+2) = beta(k) * (2*pi)**(2k+2) / (2 * (2k)!).
    """
    if k < 0:
        raise ValueError("zeta_even requires k >= 0")
    if precision < MIN_PRECISION:
        raise ValueError(f"precision must be >= {MIN_PRECISION}")
    with working(precision):
        two_pi = 2 * mp.pi
        value = mp.convert(beta(k)) * two_pi ** (2 * k + 2) / (2 * mp.factorial(2 * k))
        return round_to(value, precision)


COEFFICIENT_FAMILIES = {
    "beta": beta,
    "beta-tilde": beta_tilde,
    "beta-hat": beta_hat,
}


def coefficient_table(family: str, max_k: int) -> list[Fraction]:
    """Exact values of one coefficient family for k = 0 .. max_k."""
    try:
        fn = COEFFICIENT_FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown coefficient family {family!r}") from None
    if max_k < 0:
        raise ValueError("max_k must be >= 0")
    return [fn(k) for k in range(max_k + 1)]
