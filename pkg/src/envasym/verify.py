"""Cross-check suite wiring the series claims to the independent oracles.

Run through ``envasym verify``; each check compares a quantity computed from
exact rational coefficients against the corresponding big-integer or
quadrature oracle and reports pass/fail.  ``deep=True`` widens the grids and
raises the working precision to 512 bits.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpf

from . import coeffs, oracle, series
from .errors import ToleranceUnattainable
from .oracle import QuadratureSpec, ThetaFamily
from .precision import round_to, to_real, working
from .series import SeriesKind

__all__ = ["CheckResult", "run_verification"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _grid_arguments(kind: SeriesKind, deep: bool) -> list:
    zs = [mpf("0.5"), 1, 2, 5, 10, 30]
    if deep:
        zs.append(50)
    if kind.integer_argument:
        zs = [z for z in zs if isinstance(z, int)]
    return zs


def tail_truth(kind: SeriesKind, z, precision: int, spec: QuadratureSpec):
    """Independent (value, error_estimate) for the series-tail function.

    Exact big-integer routes are used wherever the argument allows; Binet's
    function falls back to quadrature of its integral representation.
    """
    if kind is SeriesKind.BINET_J:
        return oracle.binet_J(z, spec, error=True)
    hi_prec = precision + 64
    with working(hi_prec):
        zz = series._checked_argument(kind, z, hi_prec)
        if kind is SeriesKind.CENTRAL_BINOMIAL:
            full = oracle.exact_ln_central_binomial(int(z), hi_prec)
        elif kind is SeriesKind.DE_MOIVRE:
            full = oracle.exact_ln_factorial(int(z), hi_prec)
        elif mp.isint(zz):
            full = oracle.exact_ln_gamma_half(int(zz), hi_prec)
        elif mp.isint(2 * zz):
            # half-integer z: Gamma(z + 1/2) = Gamma(m + 1) = m!
            full = oracle.exact_ln_factorial(int(zz - mpf(1) / 2), hi_prec)
        else:
            raise ValueError(f"no exact oracle for {kind} at z = {z}")
        value = full - series._prefix(kind, zz)
        err = (abs(full) + abs(value) + 1) * mpf(2) ** (6 - hi_prec)
        return round_to(value, precision), round_to(err, precision)


def _check_coefficient_quadrature(deep: bool, spec: QuadratureSpec) -> CheckResult:
    k_max = 6 if deep else 4
    worst = mpf(0)
    with working(spec.precision):
        tol = mpf("1e-25")
        for family in ThetaFamily:
            fn = {
                ThetaFamily.THETA: coeffs.beta,
                ThetaFamily.THETA_TILDE: coeffs.beta_tilde,
                ThetaFamily.THETA_HAT: coeffs.beta_hat,
            }[family]
            for k in range(k_max + 1):
                got = oracle.coefficient_quadrature(family, k, spec)
                want = to_real(fn(k))
                worst = max(worst, abs(got - want) / want)
        return CheckResult(
            "coefficient-quadrature",
            worst <= tol,
            f"max relative error {mp.nstr(worst, 4)} over 3 families, k <= {k_max}",
        )


def _check_theta_containment(deep: bool, spec: QuadratureSpec) -> CheckResult:
    ks = [0, 1, 2, 3] if deep else [0, 1, 2]
    zs = [mpf("0.25"), mpf("0.5"), 1, 5, 20, 50] if deep else [mpf("0.5"), 1, 5, 20]
    bad = []
    with working(spec.precision):
        for family in ThetaFamily:
            for k in ks:
                for z in zs:
                    theta, err = oracle.theta_ratio(family, k, z, spec, error=True)
                    if not (theta - 0 > err and 1 - theta > err):
                        bad.append((family.value, k, z))
    return CheckResult(
        "theta-containment",
        not bad,
        "all ratios strictly inside (0, 1)" if not bad else f"violations: {bad}",
    )


def _check_weight_linear_dependence(deep: bool, spec: QuadratureSpec) -> CheckResult:
    k_max = 4 if deep else 2
    with working(spec.precision):
        rel_cap = mpf(2) ** (40 - spec.precision)
        worst_pointwise = mpf(0)
        for eta in [mpf("0.1"), mpf("0.5"), mpf(1), mpf(2)]:
            lhs = ThetaFamily.THETA.weight(eta) + ThetaFamily.THETA_HAT.weight(eta)
            rhs = ThetaFamily.THETA_TILDE.weight(eta)
            worst_pointwise = max(worst_pointwise, abs(lhs - rhs) / rhs)
        ok = worst_pointwise <= rel_cap
        worst_integral = mpf(0)
        for k in range(k_max + 1):
            total = oracle.coefficient_quadrature(
                ThetaFamily.THETA, k, spec
            ) + oracle.coefficient_quadrature(ThetaFamily.THETA_HAT, k, spec)
            combined, err = oracle.coefficient_quadrature(
                ThetaFamily.THETA_TILDE, k, spec, error=True
            )
            gap = abs(total - combined)
            worst_integral = max(worst_integral, gap / combined)
            if gap > 2 * max(err, combined * spec.effective_tol()):
                ok = False
        return CheckResult(
            "weight-linear-dependence",
            ok,
            f"pointwise rel gap {mp.nstr(worst_pointwise, 4)}, "
            f"integral rel gap {mp.nstr(worst_integral, 4)}",
        )


def _check_remainder_identity(deep: bool, spec: QuadratureSpec) -> CheckResult:
    ks = [0, 1, 2, 3] if deep else [0, 2]
    zs = [mpf("0.5"), 1, 5, 20] if deep else [1, 5]
    fn = {
        ThetaFamily.THETA: coeffs.beta,
        ThetaFamily.THETA_TILDE: coeffs.beta_tilde,
        ThetaFamily.THETA_HAT: coeffs.beta_hat,
    }
    worst = mpf(0)
    with working(spec.precision):
        for family in ThetaFamily:
            for k in ks:
                for z in zs:
                    rem = oracle.remainder_quadrature(family, k, z, spec)
                    theta = oracle.theta_ratio(family, k, z, spec)
                    zz = to_real(z)
                    predicted = (
                        family.remainder_sign(k)
                        * theta
                        * to_real(fn[family](k))
                        / zz ** (2 * k + 1)
                    )
                    worst = max(worst, abs(rem - predicted) / abs(predicted))
        tol = mpf(2) ** (64 - spec.precision)
        return CheckResult(
            "remainder-identity",
            worst <= tol,
            f"max relative mismatch {mp.nstr(worst, 4)}",
        )


def _check_jtilde_decomposition(deep: bool, spec: QuadratureSpec) -> CheckResult:
    zs = [1, 2, 5, 10] if deep else [1, 2, 5]
    worst = mpf(0)
    with working(spec.precision):
        for z in zs:
            direct = oracle.binet_J_tilde(z, spec)
            composed = oracle.binet_J(2 * z, spec) - 2 * oracle.binet_J(z, spec)
            worst = max(worst, abs(direct - composed) / abs(direct))
        tol = mpf(2) ** (64 - spec.precision)
        return CheckResult(
            "jtilde-decomposition",
            worst <= tol,
            f"max relative mismatch {mp.nstr(worst, 4)}",
        )


def _check_binet_cross_check(deep: bool, spec: QuadratureSpec) -> CheckResult:
    ns = [1, 2, 5, 10] if deep else [1, 5]
    worst = mpf(0)
    with working(spec.precision):
        for n in ns:
            quad = oracle.binet_J(n, spec)
            exact = oracle.exact_ln_factorial(n - 1, spec.precision + 64)
            zz = to_real(n)
            direct = exact - (
                (zz - mpf(1) / 2) * mp.log(zz) - zz + mp.log(2 * mp.pi) / 2
            )
            worst = max(worst, abs(quad - direct) / abs(direct))
        tol = mpf(2) ** (64 - spec.precision)
        return CheckResult(
            "binet-vs-exact-gamma",
            worst <= tol,
            f"max relative mismatch {mp.nstr(worst, 4)}",
        )


def _check_bracketing_grid(deep: bool, spec: QuadratureSpec) -> CheckResult:
    k_range = range(11) if deep else range(9)
    checks = 0
    failures = []
    for kind in SeriesKind:
        for z in _grid_arguments(kind, deep):
            truth, err = tail_truth(kind, z, spec.precision, spec)
            for k in k_range:
                env = series.envelope_interval(kind, z, k, spec.precision)
                with working(spec.precision):
                    margin = min(truth - env.lo, env.hi - truth)
                checks += 1
                if not (env.contains(truth) and margin >= 10 * err):
                    failures.append((kind.value, str(z), k))
    return CheckResult(
        "bracketing-grid",
        not failures,
        f"{checks} containment checks"
        + ("" if not failures else f", failures: {failures[:5]}"),
    )


def _check_sign_alternation(deep: bool, spec: QuadratureSpec) -> CheckResult:
    k_range = range(11) if deep else range(9)
    bad = []
    skipped = 0
    for kind in SeriesKind:
        for z in _grid_arguments(kind, deep):
            truth, err = tail_truth(kind, z, spec.precision, spec)
            for k in k_range:
                with working(spec.precision):
                    remainder = truth - series.partial_sum(kind, z, k, spec.precision)
                    if abs(remainder) < 10 * err:
                        skipped += 1
                        continue
                    if mp.sign(remainder) != kind.term_sign(k):
                        bad.append((kind.value, str(z), k))
    return CheckResult(
        "sign-alternation",
        not bad,
        f"{skipped} comparisons skipped as below oracle noise"
        + ("" if not bad else f", mismatches: {bad[:5]}"),
    )


def _check_nesting(deep: bool, spec: QuadratureSpec) -> CheckResult:
    k_cap = 10 if deep else 8
    bad = []
    for kind in SeriesKind:
        for z in _grid_arguments(kind, deep):
            k_star = series.min_term_index(kind, z, spec.precision)
            for k in range(min(k_cap, k_star)):
                outer = series.envelope_interval(kind, z, k, spec.precision)
                inner = series.envelope_interval(kind, z, k + 1, spec.precision)
                if not (outer.lo <= inner.lo and inner.hi <= outer.hi):
                    bad.append((kind.value, str(z), k))
    return CheckResult(
        "nesting-below-minimum-term",
        not bad,
        "nested" if not bad else f"violations: {bad[:5]}",
    )


def _check_half_shift_consistency(deep: bool, spec: QuadratureSpec) -> CheckResult:
    # ln Gamma(z + 1/2) - ln Gamma(z) - (ln z)/2 telescopes to the
    # central-binomial correction; the interval difference of the two
    # certified enclosures must contain its quadrature value.
    zs = [2, 5, 10, 30] if deep else [2, 5, 10]
    bad = []
    for z in zs:
        half = series.ln_gamma_plus_half(z, "1e-6", precision=spec.precision)
        whole = series.ln_gamma(z, "1e-6", precision=spec.precision)
        truth = oracle.binet_J_tilde(z, spec)
        lo1, hi1 = half.interval()
        lo2, hi2 = whole.interval()
        with working(spec.precision):
            lo = lo1 - hi2 - mp.log(z) / 2
            hi = hi1 - lo2 - mp.log(z) / 2
        if not (lo <= truth <= hi):
            bad.append(z)
    return CheckResult(
        "half-shift-consistency",
        not bad,
        "interval differences contain the correction"
        if not bad
        else f"violations at z = {bad}",
    )


def _check_auto_truncate_policy(deep: bool, spec: QuadratureSpec) -> CheckResult:
    samples = [
        (SeriesKind.BINET_J, mpf("0.5"), "1e-4"),
        (SeriesKind.BINET_J, 5, "1e-10"),
        (SeriesKind.BINET_J, 1, "1e-30"),
        (SeriesKind.CENTRAL_BINOMIAL, 10, "1e-6"),
        (SeriesKind.GAMMA_PLUS_HALF, 1, "1e-12"),
        (SeriesKind.DE_MOIVRE, 3, "1e-8"),
    ]
    if deep:
        samples += [
            (SeriesKind.CENTRAL_BINOMIAL, 30, "1e-40"),
            (SeriesKind.GAMMA_PLUS_HALF, mpf("0.5"), "1e-35"),
        ]
    bad = []
    for kind, z, tol in samples:
        with working(spec.precision):
            tol_real = to_real(tol)
        k_star = series.min_term_index(kind, z, spec.precision)
        try:
            k, bound = series.auto_truncate(kind, z, tol, spec.precision)
            if not (bound <= tol_real and k <= k_star):
                bad.append((kind.value, str(z), tol, "bad success"))
        except ToleranceUnattainable as exc:
            floor_ok = exc.best_bound > tol_real and exc.k_best == k_star
            if not floor_ok:
                bad.append((kind.value, str(z), tol, "bad floor"))
    return CheckResult(
        "auto-truncate-policy",
        not bad,
        "bounds honored" if not bad else f"violations: {bad}",
    )


def _check_half_shift_relabeling(deep: bool, spec: QuadratureSpec) -> CheckResult:
    samples = [(1, 0), (7, 3), (20, 4)]
    if deep:
        samples.append((50, 6))
    bad = []
    for n, k in samples:
        a = series.ln_factorial_demoivre(n, terms=k, precision=spec.precision)
        with working(spec.precision):
            shifted = to_real(n) + mpf(1) / 2
        b = series.ln_gamma_plus_half(shifted, terms=k, precision=spec.precision)
        if not (a.value == b.value and a.error_bound == b.error_bound):
            bad.append((n, k))
    return CheckResult(
        "half-shift-relabeling",
        not bad,
        "factorial series identical to shifted evaluation"
        if not bad
        else f"mismatches: {bad}",
    )


_CHECKS = [
    _check_coefficient_quadrature,
    _check_theta_containment,
    _check_weight_linear_dependence,
    _check_remainder_identity,
    _check_jtilde_decomposition,
    _check_binet_cross_check,
    _check_bracketing_grid,
    _check_sign_alternation,
    _check_nesting,
    _check_half_shift_consistency,
    _check_auto_truncate_policy,
    _check_half_shift_relabeling,
]


def run_verification(deep: bool = False, precision: int | None = None) -> list[CheckResult]:
    """Run every cross-check; deep mode widens grids and uses 512 bits."""
    if precision is None:
        precision = 512 if deep else 256
    spec = QuadratureSpec(precision=precision)
    return [check(deep, spec) for check in _CHECKS]
