"""Truncated expansions with rigorous two-sided enclosures.

Four classical asymptotic series are handled, all strictly enveloping for
real positive arguments: the truncation remainder has the sign of the first
omitted term and is smaller in magnitude.  That single fact, valid at every
truncation order, turns any two consecutive partial sums into a guaranteed
enclosure of the limit function and the first omitted term into a certified
error bound.

The kinds and their term shapes (coefficients from :mod:`envasym.coeffs`):

* ``BINET_J``           (-1)^j  beta(j)       / z^(2j+1)   -> J(z)
* ``CENTRAL_BINOMIAL``  (-1)^(j+1) beta_tilde(j) / z^(2j+1) -> J~(z)
* ``GAMMA_PLUS_HALF``   (-1)^(j+1) beta_hat(j)  / z^(2j+1)  -> ln-Gamma(z+1/2) tail
* ``DE_MOIVRE``         same as GAMMA_PLUS_HALF with z = n + 1/2

``term``, ``partial_sum``, ``envelope_interval``, ``min_term_index`` and
``auto_truncate`` operate on the series tail itself; ``ln_gamma``,
``ln_central_binomial``, ``ln_gamma_plus_half`` and ``ln_factorial_demoivre``
add the elementary prefix and return a :class:`CertifiedValue` for the full
function.

Rigor contract: the mathematical bounds are exact in exact arithmetic;
computed endpoints and bounds are widened outward by a relative
``2**-(P-32)`` margin (see :func:`envasym.precision.relative_slop`) so that
containment survives floating-point rounding at precision P.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from . import coeffs
from .errors import DomainError, ToleranceUnattainable
from .precision import (
    DEFAULT_PRECISION,
    MIN_PRECISION,
    real_to_fraction,
    relative_slop,
    relative_slop_fraction,
    round_to,
    to_real,
    working,
)

__all__ = [
    "SeriesKind",
    "EnvelopeInterval",
    "CertifiedValue",
    "term",
    "partial_sum",
    "envelope_interval",
    "min_term_index",
    "auto_truncate",
    "ln_gamma",
    "ln_central_binomial",
    "ln_gamma_plus_half",
    "ln_factorial_demoivre",
]

_DEFAULT_TOL = "1e-12"
_MIN_TERM_SCAN_CAP = 100_000


class SeriesKind(enum.Enum):
    """The four expansions, keyed by their CLI names."""

    BINET_J = "binet"
    CENTRAL_BINOMIAL = "central-binom"
    GAMMA_PLUS_HALF = "gamma-half"
    DE_MOIVRE = "demoivre"

    @classmethod
    def from_name(cls, name: str) -> "SeriesKind":
        for kind in cls:
            if kind.value == name:
                return kind
        raise ValueError(f"unknown series kind {name!r}")

    def coefficient(self, j: int) -> Fraction:
        """Exact positive coefficient magnitude of the j-th term."""
        if self is SeriesKind.BINET_J:
            return coeffs.beta(j)
        if self is SeriesKind.CENTRAL_BINOMIAL:
            return coeffs.beta_tilde(j)
        return coeffs.beta_hat(j)

    def term_sign(self, j: int) -> int:
        if self is SeriesKind.BINET_J:
            return 1 if j % 2 == 0 else -1
        return -1 if j % 2 == 0 else 1

    @property
    def half_shift(self) -> bool:
        """Whether the expansion variable is z + 1/2 rather than z."""
        return self is SeriesKind.DE_MOIVRE

    @property
    def integer_argument(self) -> bool:
        """Whether the user-facing evaluation requires a positive integer."""
        return self in (SeriesKind.CENTRAL_BINOMIAL, SeriesKind.DE_MOIVRE)


@dataclass(frozen=True)
class EnvelopeInterval:
    """Ordered enclosure [lo, hi] of a series tail, plus truncation metadata.

    ``bound`` is the magnitude of the first omitted term; hi - lo equals it
    up to the documented rounding slop.  For real z > 0 the true tail value
    lies in [lo, hi].
    """

    lo: mpf
    hi: mpf
    k_used: int
    bound: mpf
    precision: int

    @property
    def width(self) -> mpf:
        with working(self.precision):
            return self.hi - self.lo

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class CertifiedValue:
    """Point value with a one-sided signed error bound.

    The true function value lies between ``value`` and
    ``value + error_sign * error_bound`` for real positive arguments.
    """

    value: mpf
    error_bound: mpf
    error_sign: int
    k_used: int
    precision: int

    def interval(self) -> tuple[mpf, mpf]:
        """The enclosure as an ordered (lo, hi) pair."""
        with working(self.precision):
            other = self.value + self.error_sign * self.error_bound
        if self.error_sign > 0:
            return self.value, other
        return other, self.value

    def contains(self, x) -> bool:
        lo, hi = self.interval()
        return lo <= x <= hi


def _checked_argument(kind: SeriesKind, z, precision: int) -> mpf:
    """Convert and validate z, applying the half shift where the kind wants it."""
    if precision < MIN_PRECISION:
        raise ValueError(f"precision must be >= {MIN_PRECISION}")
    with working(precision):
        zz = to_real(z)
        if not mp.isfinite(zz) or zz <= 0:
            raise DomainError(f"series argument must be a finite real > 0, got {z!r}")
        if kind.half_shift:
            zz = zz + mpf(1) / 2
        return zz


def term(kind: SeriesKind, j: int, z, precision: int = DEFAULT_PRECISION) -> mpf:
    """The signed j-th term of the expansion at working precision."""
    if j < 0:
        raise ValueError("term index must be >= 0")
    zz = _checked_argument(kind, z, precision)
    with working(precision):
        value = kind.term_sign(j) * mp.convert(kind.coefficient(j)) / zz ** (2 * j + 1)
        return round_to(value, precision)


def partial_sum(kind: SeriesKind, z, k: int, precision: int = DEFAULT_PRECISION) -> mpf:
    """Sum of the first k terms (an empty sum for k = 0)."""
    if k < 0:
        raise ValueError("term count must be >= 0")
    zz = _checked_argument(kind, z, precision)
    with working(precision):
        return round_to(_partial_sum_at(kind, zz, k), precision)


def _partial_sum_at(kind: SeriesKind, zz: mpf, k: int) -> mpf:
    # Caller supplies the validated, shifted argument and the precision context.
    total = mpf(0)
    zz2 = zz * zz
    power = zz
    for j in range(k):
        total += kind.term_sign(j) * mp.convert(kind.coefficient(j)) / power
        power *= zz2
    return total


def envelope_interval(
    kind: SeriesKind, z, k: int, precision: int = DEFAULT_PRECISION
) -> EnvelopeInterval:
    """Enclosure of the series tail between partial sums k and k+1.

    Valid for every k >= 0, not only below the minimum-term index: the
    remainder always lies strictly between consecutive partial sums.
    """
    if k < 0:
        raise ValueError("term count must be >= 0")
    zz = _checked_argument(kind, z, precision)
    with working(precision):
        s_k = _partial_sum_at(kind, zz, k)
        t_k = kind.term_sign(k) * mp.convert(kind.coefficient(k)) / zz ** (2 * k + 1)
        s_next = s_k + t_k
        lo, hi = (s_k, s_next) if s_k <= s_next else (s_next, s_k)
        slop = relative_slop(precision)
        pad = slop * max(abs(lo), abs(hi))
        return EnvelopeInterval(
            lo=round_to(lo - pad, precision),
            hi=round_to(hi + pad, precision),
            k_used=k,
            bound=round_to(abs(t_k) * (1 + slop), precision),
            precision=precision,
        )


def _term_bound_fraction(kind: SeriesKind, zf: Fraction, k: int) -> Fraction:
    return kind.coefficient(k) / zf ** (2 * k + 1)


def _exact_argument(kind: SeriesKind, z, precision: int) -> Fraction:
    zz = _checked_argument(kind, z, precision)
    return real_to_fraction(zz)


def min_term_index(kind: SeriesKind, z, precision: int = DEFAULT_PRECISION) -> int:
    """First index where term magnitudes stop strictly decreasing.

    Decided in exact rational arithmetic on the (dyadic) argument, so ties
    resolve deterministically to the earlier index.  Termination is
    guaranteed by the factorial growth of the coefficients.
    """
    zf = _exact_argument(kind, z, precision)
    zf2 = zf * zf
    for k in range(_MIN_TERM_SCAN_CAP):
        # |t_{k+1}| >= |t_k|  <=>  c_{k+1} >= c_k * z^2
        if kind.coefficient(k + 1) >= kind.coefficient(k) * zf2:
            return k
    raise RuntimeError("minimum-term scan cap exceeded")


def auto_truncate(
    kind: SeriesKind, z, tol, precision: int = DEFAULT_PRECISION
) -> tuple[int, mpf]:
    """Smallest k (at or below the minimum-term index) with |term(k)| <= tol.

    Returns ``(k, bound)`` where ``bound`` is the slop-widened magnitude of
    the first omitted term; ``bound <= tol`` whenever the call succeeds.
    Raises :class:`ToleranceUnattainable`, carrying the best achievable
    bound, when the accuracy floor of the series at this argument is above
    ``tol``.  All decisions are made in exact rational arithmetic.
    """
    zf = _exact_argument(kind, z, precision)
    with working(precision):
        tol_real = to_real(tol)
    if not mp.isfinite(tol_real) or tol_real <= 0:
        raise DomainError(f"tolerance must be a finite real > 0, got {tol!r}")
    tol_frac = real_to_fraction(tol_real)
    inflate = 1 + relative_slop_fraction(precision)

    zf2 = zf * zf
    k = 0
    bound = _term_bound_fraction(kind, zf, k)
    while True:
        widened = bound * inflate
        if widened <= tol_frac:
            with working(precision):
                return k, round_to(to_real(widened), precision)
        nxt = bound * kind.coefficient(k + 1) / (kind.coefficient(k) * zf2)
        if nxt >= bound:
            with working(precision):
                best = round_to(to_real(bound * inflate), precision)
            raise ToleranceUnattainable(
                f"tolerance {mp.nstr(tol_real, 8)} is below the accuracy floor of "
                f"{kind.value} at this argument; best achievable bound is "
                f"{mp.nstr(best, 8)} at k = {k}",
                best_bound=best,
                k_best=k,
            )
        k += 1
        bound = nxt
        if k > _MIN_TERM_SCAN_CAP:
            raise RuntimeError("minimum-term scan cap exceeded")


def _prefix(kind: SeriesKind, zz: mpf) -> mpf:
    """The elementary (non-series) part of the full function."""
    half_ln_two_pi = mp.log(2 * mp.pi) / 2
    if kind is SeriesKind.BINET_J:
        return (zz - mpf(1) / 2) * mp.log(zz) - zz + half_ln_two_pi
    if kind is SeriesKind.CENTRAL_BINOMIAL:
        return zz * mp.log(4) - mp.log(mp.pi * zz) / 2
    # GAMMA_PLUS_HALF and DE_MOIVRE share one prefix in the shifted variable.
    return zz * mp.log(zz) - zz + half_ln_two_pi


def _resolve_terms(kind: SeriesKind, z, tol, terms, precision: int) -> int:
    if terms is not None and tol is not None:
        raise ValueError("pass either tol or terms, not both")
    if terms is not None:
        if terms < 0:
            raise ValueError("terms must be >= 0")
        return terms
    if tol is None:
        tol = _DEFAULT_TOL
    k, _ = auto_truncate(kind, z, tol, precision)
    return k


def _certified(kind: SeriesKind, z, k: int, precision: int) -> CertifiedValue:
    zz = _checked_argument(kind, z, precision)
    with working(precision):
        value = _prefix(kind, zz) + _partial_sum_at(kind, zz, k)
        t_k = mp.convert(kind.coefficient(k)) / zz ** (2 * k + 1)
        sign = kind.term_sign(k)
        slop = relative_slop(precision)
        # Pull the anchor endpoint outward and widen the bound so the
        # one-sided containment survives rounding of value itself.
        anchored = value - sign * slop * abs(value)
        bound = t_k * (1 + slop) + 2 * slop * abs(value)
        return CertifiedValue(
            value=round_to(anchored, precision),
            error_bound=round_to(bound, precision),
            error_sign=sign,
            k_used=k,
            precision=precision,
        )


def _checked_integer(n, name: str) -> int:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DomainError(f"{name} must be a positive integer, got {n!r}")
    return n


def ln_gamma(
    z, tol=None, *, terms=None, precision: int = DEFAULT_PRECISION
) -> CertifiedValue:
    """Certified ln Gamma(z) for real z > 0 via the Stirling/Binet series.

    value = (z - 1/2) ln z - z + ln(2 pi)/2 + partial sum; the remainder has
    sign (-1)^k and magnitude below the returned bound.
    """
    k = _resolve_terms(SeriesKind.BINET_J, z, tol, terms, precision)
    return _certified(SeriesKind.BINET_J, z, k, precision)


def ln_central_binomial(
    n: int, tol=None, *, terms=None, precision: int = DEFAULT_PRECISION
) -> CertifiedValue:
    """Certified ln C(2n, n) for a positive integer n.

    value = n ln 4 - ln(pi n)/2 + partial sum; remainder sign (-1)^(k+1).
    """
    _checked_integer(n, "n")
    k = _resolve_terms(SeriesKind.CENTRAL_BINOMIAL, n, tol, terms, precision)
    return _certified(SeriesKind.CENTRAL_BINOMIAL, n, k, precision)


def ln_gamma_plus_half(
    z, tol=None, *, terms=None, precision: int = DEFAULT_PRECISION
) -> CertifiedValue:
    """Certified ln Gamma(z + 1/2) for real z > 0 (Gauss's expansion).

    value = z ln z - z + ln(2 pi)/2 + partial sum; remainder sign (-1)^(k+1).
    """
    k = _resolve_terms(SeriesKind.GAMMA_PLUS_HALF, z, tol, terms, precision)
    return _certified(SeriesKind.GAMMA_PLUS_HALF, z, k, precision)


def ln_factorial_demoivre(
    n: int, tol=None, *, terms=None, precision: int = DEFAULT_PRECISION
) -> CertifiedValue:
    """Certified ln n! from de Moivre's series in powers of (n + 1/2).

    Pure relabeling of ``ln_gamma_plus_half`` at z = n + 1/2: the returned
    value is bit-identical to that evaluation at the same k.
    """
    _checked_integer(n, "n")
    k = _resolve_terms(SeriesKind.DE_MOIVRE, n, tol, terms, precision)
    return _certified(SeriesKind.DE_MOIVRE, n, k, precision)
