"""Command-line front end with machine-readable output.

Subcommands: ``coeffs`` (exact fractions), ``eval`` (certified value),
``bound`` (series-tail enclosure), ``verify`` (oracle cross-check suite) and
``demo`` (non-enveloping witness search).  Output formats are ``json`` (one
object per invocation), ``csv`` (header row plus data rows) and ``plain``.

Every numeric field is serialized as a full-precision decimal string of
ceil(P * 0.302) significant digits, with P recorded in the same record, so
nothing is silently rounded below the working precision.  JSON records use
a fixed field order and round-trip byte-identically through parse/serialize.

Exit codes: 0 success, 1 usage error, 2 unattainable tolerance or numeric
domain error, 3 verification failure.  The default precision is 256 bits,
overridable with the ENVASYM_PRECISION environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from mpmath import mp

from . import coeffs, demo, series, verify
from .errors import DomainError, QuadratureNonConvergence, ToleranceUnattainable
from .oracle import QuadratureSpec
from .precision import (
    DEFAULT_PRECISION,
    MIN_PRECISION,
    PRECISION_ENV_VAR,
    format_real,
    real_to_fraction,
    to_real,
    working,
)
from .series import SeriesKind

__all__ = ["run_cli", "main"]

FORMAT_VERSION = "1"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERIC = 2
EXIT_VERIFY_FAILED = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _default_precision() -> int:
    raw = os.environ.get(PRECISION_ENV_VAR)
    if raw is None:
        return DEFAULT_PRECISION
    try:
        value = int(raw)
    except ValueError:
        raise _UsageError(
            f"{PRECISION_ENV_VAR} must be an integer number of bits, got {raw!r}"
        ) from None
    if value < MIN_PRECISION:
        raise _UsageError(f"{PRECISION_ENV_VAR} must be >= {MIN_PRECISION}")
    return value


def _build_parser() -> _Parser:
    parser = _Parser(prog="envasym", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    fmt = {"choices": ["json", "csv", "plain"], "default": "json"}
    series_names = [kind.value for kind in SeriesKind]

    p = sub.add_parser("coeffs", help="exact rational series coefficients")
    p.add_argument("--family", required=True, choices=sorted(coeffs.COEFFICIENT_FAMILIES))
    p.add_argument("--max-k", required=True, type=int, metavar="K")
    p.add_argument("--format", **fmt)

    p = sub.add_parser("eval", help="certified evaluation of a full function")
    p.add_argument("--series", required=True, choices=series_names)
    p.add_argument("--z", required=True, metavar="Z")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--tol", metavar="T")
    group.add_argument("--terms", type=int, metavar="K")
    p.add_argument("--precision", type=int, metavar="P")
    p.add_argument("--format", **fmt)

    p = sub.add_parser("bound", help="enclosure of the series tail after K terms")
    p.add_argument("--series", required=True, choices=series_names)
    p.add_argument("--z", required=True, metavar="Z")
    p.add_argument("--terms", required=True, type=int, metavar="K")
    p.add_argument("--precision", type=int, metavar="P")
    p.add_argument("--format", **fmt)

    p = sub.add_parser("verify", help="run the oracle cross-check suite")
    p.add_argument("--deep", action="store_true")
    p.add_argument("--precision", type=int, metavar="P")
    p.add_argument("--format", **fmt)

    p = sub.add_parser("demo", help="search for envelope-violation witnesses")
    p.add_argument("--b", required=True, metavar="B")
    p.add_argument("--x-from", default="5", metavar="A")
    p.add_argument("--x-to", default="20", metavar="C")
    p.add_argument("--steps", type=int, default=16, metavar="N")
    p.add_argument("--k-max", type=int, default=5, metavar="K")
    p.add_argument("--precision", type=int, metavar="P")
    p.add_argument("--format", **fmt)

    return parser


def _resolve_precision(args) -> int:
    value = getattr(args, "precision", None)
    if value is None:
        return _default_precision()
    if value < MIN_PRECISION:
        raise _UsageError(f"--precision must be >= {MIN_PRECISION}")
    return value


def _parse_real(raw: str, precision: int, what: str):
    try:
        with working(precision):
            return to_real(raw)
    except (ValueError, TypeError):
        raise _UsageError(f"{what} must be a decimal number, got {raw!r}") from None


def _parse_argument(raw: str, kind: SeriesKind, precision: int):
    """Series argument: integer kinds get an int when the literal is one."""
    try:
        return int(raw)
    except ValueError:
        pass
    value = _parse_real(raw, precision, "--z")
    if kind.integer_argument:
        # hand the non-integer through; the library rejects it as a domain error
        return value
    return value


def _emit_json(record: dict) -> None:
    sys.stdout.write(json.dumps(record) + "\n")


def _emit_csv(header: list[str], rows: list[list], record: dict) -> None:
    common = [record["command"], record["precision"], record["format_version"]]
    sys.stdout.write(",".join(["command", "precision", "format_version"] + header) + "\n")
    for row in rows:
        sys.stdout.write(",".join(str(c) for c in common + row) + "\n")


def _emit_plain(lines: list[str]) -> None:
    for line in lines:
        sys.stdout.write(line + "\n")


def _record(command: str, params: dict, precision: int, result) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "command": command,
        "params": params,
        "precision": precision,
        "result": result,
    }


def _cmd_coeffs(args) -> int:
    if args.max_k < 0:
        raise _UsageError("--max-k must be >= 0")
    precision = _default_precision()
    table = coeffs.coefficient_table(args.family, args.max_k)
    rows = [
        {"k": k, "numerator": f.numerator, "denominator": f.denominator,
         "fraction": f"{f.numerator}/{f.denominator}"}
        for k, f in enumerate(table)
    ]
    record = _record(
        "coeffs", {"family": args.family, "max_k": args.max_k}, precision, {"rows": rows}
    )
    if args.format == "json":
        _emit_json(record)
    elif args.format == "csv":
        _emit_csv(
            ["family", "k", "numerator", "denominator", "fraction"],
            [[args.family, r["k"], r["numerator"], r["denominator"], r["fraction"]] for r in rows],
            record,
        )
    else:
        _emit_plain([f"{args.family}({r['k']}) = {r['fraction']}" for r in rows])
    return EXIT_OK


_EVALUATORS = {
    SeriesKind.BINET_J: series.ln_gamma,
    SeriesKind.CENTRAL_BINOMIAL: series.ln_central_binomial,
    SeriesKind.GAMMA_PLUS_HALF: series.ln_gamma_plus_half,
    SeriesKind.DE_MOIVRE: series.ln_factorial_demoivre,
}


def _cmd_eval(args) -> int:
    precision = _resolve_precision(args)
    kind = SeriesKind.from_name(args.series)
    z = _parse_argument(args.z, kind, precision)
    tol = args.tol
    terms = args.terms
    if tol is None and terms is None:
        tol = "1e-12"
    if tol is not None:
        # validate eagerly so garbage is a usage error, not a numeric one
        _parse_real(tol, precision, "--tol")
    certified = _EVALUATORS[kind](z, tol, terms=terms, precision=precision)
    lo, hi = certified.interval()
    result = {
        "value": format_real(certified.value, precision),
        "error_bound": format_real(certified.error_bound, precision),
        "error_sign": certified.error_sign,
        "k_used": certified.k_used,
        "lo": format_real(lo, precision),
        "hi": format_real(hi, precision),
    }
    record = _record(
        "eval",
        {"series": args.series, "z": args.z, "tol": tol, "terms": terms},
        precision,
        result,
    )
    if args.format == "json":
        _emit_json(record)
    elif args.format == "csv":
        _emit_csv(
            ["series", "z", "tol", "terms", "k_used", "value", "error_bound",
             "error_sign", "lo", "hi"],
            [[args.series, args.z, tol if tol is not None else "",
              terms if terms is not None else "", certified.k_used,
              result["value"], result["error_bound"], certified.error_sign,
              result["lo"], result["hi"]]],
            record,
        )
    else:
        _emit_plain(
            [f"series       = {args.series}",
             f"z            = {args.z}",
             f"k_used       = {certified.k_used}",
             f"value        = {result['value']}",
             f"error_bound  = {result['error_bound']}",
             f"error_sign   = {certified.error_sign:+d}",
             f"enclosure    = [{result['lo']}, {result['hi']}]",
             f"precision    = {precision}"]
        )
    return EXIT_OK


def _cmd_bound(args) -> int:
    precision = _resolve_precision(args)
    kind = SeriesKind.from_name(args.series)
    if args.terms < 0:
        raise _UsageError("--terms must be >= 0")
    z = _parse_argument(args.z, kind, precision)
    env = series.envelope_interval(kind, z, args.terms, precision)
    result = {
        "lo": format_real(env.lo, precision),
        "hi": format_real(env.hi, precision),
        "bound": format_real(env.bound, precision),
        "k_used": env.k_used,
    }
    record = _record(
        "bound",
        {"series": args.series, "z": args.z, "terms": args.terms},
        precision,
        result,
    )
    if args.format == "json":
        _emit_json(record)
    elif args.format == "csv":
        _emit_csv(
            ["series", "z", "terms", "k_used", "lo", "hi", "bound"],
            [[args.series, args.z, args.terms, env.k_used,
              result["lo"], result["hi"], result["bound"]]],
            record,
        )
    else:
        _emit_plain(
            [f"series    = {args.series}",
             f"z         = {args.z}",
             f"k_used    = {env.k_used}",
             f"enclosure = [{result['lo']}, {result['hi']}]",
             f"bound     = {result['bound']}",
             f"precision = {precision}"]
        )
    return EXIT_OK


def _cmd_verify(args) -> int:
    precision = getattr(args, "precision", None)
    if precision is not None and precision < MIN_PRECISION:
        raise _UsageError(f"--precision must be >= {MIN_PRECISION}")
    results = verify.run_verification(deep=args.deep, precision=precision)
    passed = all(r.passed for r in results)
    effective = precision if precision is not None else (512 if args.deep else 256)
    record = _record(
        "verify",
        {"deep": args.deep},
        effective,
        {"passed": passed,
         "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail}
                    for r in results]},
    )
    if args.format == "json":
        _emit_json(record)
    elif args.format == "csv":
        _emit_csv(
            ["deep", "name", "passed", "detail"],
            [[args.deep, r.name, r.passed, '"' + r.detail.replace('"', "'") + '"']
             for r in results],
            record,
        )
    else:
        _emit_plain(
            [f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}" for r in results]
            + [f"{'PASS' if passed else 'FAIL'} overall ({len(results)} checks)"]
        )
    return EXIT_OK if passed else EXIT_VERIFY_FAILED


def _demo_grid(x_from, x_to, steps: int, precision: int):
    if steps < 1:
        raise _UsageError("--steps must be >= 1")
    a = real_to_fraction(_parse_real(x_from, precision, "--x-from"))
    c = real_to_fraction(_parse_real(x_to, precision, "--x-to"))
    if steps == 1:
        points = [a]
    else:
        step = (c - a) / (steps - 1)
        points = [a + i * step for i in range(steps)]
    with working(precision):
        return [to_real(p) for p in points]


def _cmd_demo(args) -> int:
    precision = _resolve_precision(args)
    if args.k_max < 1:
        raise _UsageError("--k-max must be >= 1")
    b = _parse_real(args.b, precision, "--b")
    grid = _demo_grid(args.x_from, args.x_to, args.steps, precision)
    spec = QuadratureSpec(precision=precision)
    witness = demo.find_envelope_violation(b, grid, args.k_max, spec)
    control = demo.enveloping_control_scan(grid, args.k_max, spec)
    witness_payload = None
    if witness is not None:
        witness_payload = {
            "x": format_real(witness.x, precision),
            "k": witness.k,
            "remainder": format_real(witness.remainder, precision),
            "next_term_bound": format_real(witness.next_term_bound, precision),
            "mode": witness.mode.value,
        }
    record = _record(
        "demo",
        {"b": args.b, "x_from": args.x_from, "x_to": args.x_to,
         "steps": args.steps, "k_max": args.k_max},
        precision,
        {"witness": witness_payload, "control_witnesses": len(control)},
    )
    if args.format == "json":
        _emit_json(record)
    elif args.format == "csv":
        row = [args.b, args.x_from, args.x_to, args.steps, args.k_max,
               witness is not None]
        row += ([witness_payload["x"], witness_payload["k"], witness_payload["mode"],
                 witness_payload["remainder"], witness_payload["next_term_bound"]]
                if witness_payload else ["", "", "", "", ""])
        row.append(len(control))
        _emit_csv(
            ["b", "x_from", "x_to", "steps", "k_max", "witness_found",
             "x", "k", "mode", "remainder", "next_term_bound", "control_witnesses"],
            [row],
            record,
        )
    else:
        lines = [f"perturbation exp(-b x) with b = {args.b}",
                 f"grid x in [{args.x_from}, {args.x_to}] ({args.steps} points), "
                 f"k <= {args.k_max}"]
        if witness_payload:
            lines += [
                "violation witness found:",
                f"  x               = {witness_payload['x']}",
                f"  k               = {witness_payload['k']}",
                f"  mode            = {witness_payload['mode']}",
                f"  remainder       = {witness_payload['remainder']}",
                f"  next_term_bound = {witness_payload['next_term_bound']}",
            ]
        else:
            lines.append("no violation witness found on this grid")
        lines.append(f"control scan witnesses (unperturbed): {len(control)}")
        _emit_plain(lines)
    return EXIT_OK


_COMMANDS = {
    "coeffs": _cmd_coeffs,
    "eval": _cmd_eval,
    "bound": _cmd_bound,
    "verify": _cmd_verify,
    "demo": _cmd_demo,
}


def run_cli(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ToleranceUnattainable as exc:
        sys.stderr.write(
            f"error: {exc}\n"
            f"best_bound: {mp.nstr(exc.best_bound, 17)} (at k = {exc.k_best})\n"
        )
        return EXIT_NUMERIC
    except (DomainError, QuadratureNonConvergence) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_NUMERIC
    except SystemExit as exc:  # argparse --help
        return int(exc.code or 0)


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))
