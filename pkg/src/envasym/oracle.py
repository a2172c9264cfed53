"""Independent ground truth: exact combinatorics and high-precision quadrature.

Everything the series side of the package claims can be cross-checked here
through a different route.  Logarithms of factorials, central binomial
coefficients and half-integer Gamma values come from exact big-integer
arithmetic; Binet's function, the series remainders and the damping ratios
come from numerical quadrature of their integral representations over
(0, inf).

The three integrand weights are

* ``theta``        -ln(1 - exp(-2*pi*eta))   (Binet / ln Gamma),
* ``theta-tilde``  ln(coth(pi*eta))          (central binomial),
* ``theta-hat``    ln(1 + exp(-2*pi*eta))    (ln Gamma(z + 1/2), de Moivre),

all strictly positive on (0, inf), which is the whole reason the series
envelop their functions.  Note the exponent in the first weight really is
e**(-2*pi*eta); a well-known misprint in some references has 2**(-2*pi*eta).

Quadrature results are trustworthy rather than certified: each value carries
an a-posteriori error estimate (the difference of the last two refinement
levels), not a proven bound.  Certification is the job of the series module.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from mpmath import mp, mpf

from .errors import DomainError, QuadratureNonConvergence
from .precision import (
    DEFAULT_PRECISION,
    GUARD_BITS,
    MIN_PRECISION,
    round_to,
    to_real,
    working,
)

__all__ = [
    "QuadratureSpec",
    "ThetaFamily",
    "exact_ln_factorial",
    "exact_ln_central_binomial",
    "exact_ln_gamma_half",
    "binet_J",
    "binet_J_tilde",
    "theta_ratio",
    "remainder_quadrature",
    "coefficient_quadrature",
]


class ThetaFamily(enum.Enum):
    """One positive integrand weight per expansion."""

    THETA = "theta"
    THETA_TILDE = "theta-tilde"
    THETA_HAT = "theta-hat"

    def weight(self, eta: mpf) -> mpf:
        """Evaluate the family's weight at eta > 0, at the ambient precision.

        Each weight keeps full relative precision at both ends of the range:
        expm1 avoids the 1 - e^(-u) cancellation as eta -> 0, and log1p or
        atanh forms avoid the log-near-one absolute-error floor as
        eta -> infinity (which moment factors eta^(2k) would amplify).
        """
        if self is ThetaFamily.THETA:
            # -ln(1 - e^(-2 pi eta))
            u = 2 * mp.pi * eta
            if u < 1:
                return -mp.log(-mp.expm1(-u))
            return -mp.log1p(-mp.exp(-u))
        if self is ThetaFamily.THETA_TILDE:
            # ln(coth(pi eta)) = 2 artanh(e^(-2 pi eta))
            if eta <= 1:
                return mp.log(mp.coth(mp.pi * eta))
            return 2 * mp.atanh(mp.exp(-2 * mp.pi * eta))
        return mp.log1p(mp.exp(-2 * mp.pi * eta))

    def remainder_sign(self, k: int) -> int:
        """Sign of the k-th remainder (equals the sign of the first omitted term)."""
        if self is ThetaFamily.THETA:
            return 1 if k % 2 == 0 else -1
        return -1 if k % 2 == 0 else 1


@dataclass(frozen=True)
class QuadratureSpec:
    """How hard to integrate: working precision, relative target, level cap.

    ``rel_tol`` of ``None`` means the floor ``2**-(precision-32)``; explicit
    values are clamped to that floor, which is as much as precision-P
    arithmetic can honestly resolve.
    """

    precision: int = DEFAULT_PRECISION
    rel_tol: Optional[mpf] = None
    max_levels: int = 20

    def __post_init__(self):
        if self.precision < MIN_PRECISION:
            raise ValueError(f"precision must be >= {MIN_PRECISION}")
        if self.max_levels < 1:
            raise ValueError("max_levels must be >= 1")

    def effective_tol(self) -> mpf:
        floor = mpf(2) ** (32 - self.precision)
        if self.rel_tol is None:
            return floor
        return max(mpf(self.rel_tol), floor)


_DEFAULT_SPEC = QuadratureSpec()

# Stop extending a tail once this many consecutive transformed-integrand
# values fall below the running-sum threshold; guards against a lone
# accidental small value.
_TAIL_RUN = 2
_TAIL_CAP = 10**7


def _de_quad_half_line(f, spec: QuadratureSpec):
    """Integrate f over (0, inf) by a double-exponential transform.

    Substitutes eta = exp((pi/2) * sinh(t)) and applies the trapezoid rule in
    t with dyadic step refinement, reusing previous levels.  Refinement stops
    when two successive levels agree to the spec's relative target; the
    returned error is that last inter-level difference.  The infinite tails
    are truncated where the transformed integrand falls below 2**-(P+32) of
    the running sum; eta = 0 is never sampled, so integrable endpoint
    singularities need no special casing.

    Returns (value, error_estimate) at working precision.  Raises
    QuadratureNonConvergence if the level cap is hit first.
    """
    prec = spec.precision
    with working(prec):
        lam = mp.pi / 2
        tail_eps = mpf(2) ** (-(prec + GUARD_BITS))
        target = spec.effective_tol()

        def g(t):
            eta = mp.exp(lam * mp.sinh(t))
            return f(eta) * lam * mp.cosh(t) * eta

        def half_sums(h, start, step):
            # sum of g(j*h) over j = start, start+step, ... on both sides of 0
            total = mpf(0)
            for sgn in (1, -1):
                j = start
                run = 0
                while True:
                    term = g(sgn * j * h)
                    total += term
                    if abs(term) <= tail_eps * (abs(total) + tail_eps):
                        run += 1
                        if run >= _TAIL_RUN:
                            break
                    else:
                        run = 0
                    j += step
                    if j > _TAIL_CAP:
                        raise QuadratureNonConvergence(
                            "tail truncation cap exceeded", value=total
                        )
            return total

        h = mpf(1)
        estimate = h * (g(mpf(0)) + half_sums(h, 1, 1))
        previous = None
        for _ in range(1, spec.max_levels + 1):
            h = h / 2
            estimate = estimate / 2 + h * half_sums(h, 1, 2)
            if previous is not None:
                err = abs(estimate - previous)
                if err <= target * abs(estimate):
                    return estimate, err
            previous = estimate
        raise QuadratureNonConvergence(
            f"no convergence within {spec.max_levels} refinement levels",
            value=estimate,
            error=abs(estimate - previous) if previous is not None else None,
        )


@lru_cache(maxsize=None)
def _moment_integral(family: ThetaFamily, k: int, spec: QuadratureSpec):
    """(value, err) of  integral eta^(2k) * weight(eta) deta  over (0, inf)."""
    with working(spec.precision):
        if k == 0:
            return _de_quad_half_line(family.weight, spec)
        return _de_quad_half_line(lambda eta: eta ** (2 * k) * family.weight(eta), spec)


@lru_cache(maxsize=None)
def _damped_moment_integral(family: ThetaFamily, k: int, z: mpf, spec: QuadratureSpec):
    """(value, err) of  integral eta^(2k)/(z^2+eta^2) * weight(eta) deta."""
    with working(spec.precision):
        z2 = mp.mpf(z) ** 2

        def integrand(eta):
            return eta ** (2 * k) / (z2 + eta * eta) * family.weight(eta)

        return _de_quad_half_line(integrand, spec)


def _check_z(z, precision: int) -> mpf:
    with working(precision):
        zz = to_real(z)
    if not mp.isfinite(zz) or zz <= 0:
        raise DomainError(f"argument must be a finite real > 0, got {z!r}")
    return zz


def _finish(value, err, spec: QuadratureSpec, error: bool):
    value = round_to(value, spec.precision)
    if error:
        return value, round_to(err, spec.precision)
    return value


def exact_ln_factorial(n: int, precision: int = DEFAULT_PRECISION) -> mpf:
    """ln(n!) from the exact big integer, correct to the stated precision."""
    if n < 0:
        raise ValueError("n must be >= 0")
    with working(precision):
        return round_to(mp.log(mpf(math.factorial(n))), precision)


def exact_ln_central_binomial(n: int, precision: int = DEFAULT_PRECISION) -> mpf:
    """ln C(2n, n) from the exact big-integer binomial coefficient."""
    if n < 1:
        raise ValueError("n must be >= 1")
    with working(precision):
        return round_to(mp.log(mpf(math.comb(2 * n, n))), precision)


def exact_ln_gamma_half(n: int, precision: int = DEFAULT_PRECISION) -> mpf:
    """ln Gamma(n + 1/2) via the duplication formula.

    Gamma(n + 1/2) = (2n)! sqrt(pi) / (4^n n!), so the result is assembled
    from exact integers plus ln(pi) at working precision.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    with working(precision):
        value = (
            mp.log(mpf(math.factorial(2 * n)))
            - mp.log(mpf(math.factorial(n)))
            - 2 * n * mp.log(2)
            + mp.log(mp.pi) / 2
        )
        return round_to(value, precision)


def binet_J(z, spec: QuadratureSpec = _DEFAULT_SPEC, *, error: bool = False):
    """Binet's function J(z) = (z/pi) * integral of weight/(z^2+eta^2).

    J(z) is the correction term in Stirling's formula:
    ln Gamma(z) = (z - 1/2) ln z - z + ln(2 pi)/2 + J(z).
    """
    zz = _check_z(z, spec.precision)
    value, err = _damped_moment_integral(ThetaFamily.THETA, 0, zz, spec)
    with working(spec.precision):
        scale = zz / mp.pi
        return _finish(scale * value, scale * err, spec, error)


def binet_J_tilde(z, spec: QuadratureSpec = _DEFAULT_SPEC, *, error: bool = False):
    """The central-binomial correction J~(z) = J(2z) - 2 J(z), by quadrature.

    Computed directly from its own integral representation
    -(z/pi) * integral of ln(coth(pi eta))/(z^2+eta^2), i.e. the k = 0
    remainder of the central-binomial series, not from two J evaluations.
    """
    zz = _check_z(z, spec.precision)
    value, err = _damped_moment_integral(ThetaFamily.THETA_TILDE, 0, zz, spec)
    with working(spec.precision):
        scale = zz / mp.pi
        return _finish(-scale * value, scale * err, spec, error)


def theta_ratio(
    family: ThetaFamily,
    k: int,
    z,
    spec: QuadratureSpec = _DEFAULT_SPEC,
    *,
    error: bool = False,
):
    """Ratio of the damped to the undamped moment integral; lies in (0, 1).

    This ratio is exactly the fraction of the first omitted term that the
    true remainder amounts to, so its containment in (0, 1) is the
    enveloping property itself.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    zz = _check_z(z, spec.precision)
    num, num_err = _damped_moment_integral(family, k, zz, spec)
    den, den_err = _moment_integral(family, k, spec)
    with working(spec.precision):
        value = zz * zz * num / den
        err = abs(value) * (num_err / abs(num) + den_err / abs(den))
        return _finish(value, err, spec, error)


def remainder_quadrature(
    family: ThetaFamily,
    k: int,
    z,
    spec: QuadratureSpec = _DEFAULT_SPEC,
    *,
    error: bool = False,
):
    """Signed truncation remainder after k terms, from its integral form.

    For the Binet family the sign is (-1)^k; for the other two families it
    is (-1)^(k+1).  The k = 0 remainder is the whole correction function.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    zz = _check_z(z, spec.precision)
    value, err = _damped_moment_integral(family, k, zz, spec)
    with working(spec.precision):
        scale = 1 / (mp.pi * zz ** (2 * k - 1))
        signed = family.remainder_sign(k) * scale * value
        return _finish(signed, scale * err, spec, error)


def coefficient_quadrature(
    family: ThetaFamily,
    k: int,
    spec: QuadratureSpec = _DEFAULT_SPEC,
    *,
    error: bool = False,
):
    """The k-th series coefficient as (1/pi) times a moment integral.

    Independent of the Bernoulli-number route in :mod:`envasym.coeffs`; the
    two must agree, and the test suite holds them to it.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    value, err = _moment_integral(family, k, spec)
    with working(spec.precision):
        inv_pi = 1 / mp.pi
        return _finish(inv_pi * value, inv_pi * err, spec, error)
