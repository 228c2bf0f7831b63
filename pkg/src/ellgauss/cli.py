"""Command-line front end: eval, verify, bench, and triple subcommands.

JSON goes to stdout for eval/verify/triple, CSV for bench, diagnostics to
stderr.  Exit codes: 0 success or pass, 1 check failure, 2 usage error,
3 numerical error (pole, bad modulus, convergence).  Outputs carry no
timestamps unless --timestamps is given, so identical invocations produce
byte-identical JSON.
"""

from __future__ import annotations

import argparse
import csv
import datetime
import json
import math
import re
import sys
import time

from . import gaussian_series as gs
from . import oracles
from . import quasiperiods as qp
from . import triple_product as tp
from . import verify as verify_mod
from .errors import EllgaussError, ParseError
from .lattice import make_lattice, shell
from .verify import GridSpec, format_complex

_FLOAT_RE = re.compile(r"(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+)(?:[eE][+-]?[0-9]+)?")

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

_BENCH_TOLS = (1e-4, 1e-6, 1e-8, 1e-10, 1e-12)
_BENCH_CLASSICAL_RADII = (10.0, 20.0, 30.0, 40.0, 50.0)


def parse_complex(text: str) -> complex:
    """Parse 'a', 'bi', or 'a+bi' with decimal floats and no whitespace.

    The imaginary unit needs an explicit coefficient ('1i', not 'i').
    Raises ParseError carrying the offset of the first offending character.
    """
    pos = 0

    def signed_float(pos: int) -> tuple[float, int]:
        sign = 1.0
        if pos < len(text) and text[pos] in "+-":
            sign = -1.0 if text[pos] == "-" else 1.0
            pos += 1
        m = _FLOAT_RE.match(text, pos)
        if not m:
            raise ParseError("expected a decimal literal", pos)
        return sign * float(m.group()), m.end()

    first, pos = signed_float(pos)
    if pos == len(text):
        return complex(first, 0.0)
    if text[pos] == "i":
        if pos + 1 != len(text):
            raise ParseError("trailing characters after imaginary unit", pos + 1)
        return complex(0.0, first)
    if text[pos] not in "+-":
        raise ParseError("expected sign or imaginary unit", pos)
    second, pos = signed_float(pos)
    if pos == len(text) or text[pos] != "i":
        raise ParseError("imaginary part must end in 'i'", pos)
    if pos + 1 != len(text):
        raise ParseError("trailing characters after imaginary unit", pos + 1)
    return complex(first, second)


def _c_dict(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors instead of exiting.

    Complex literals like '-0.2-0.3i' must be usable as option values, so
    anything starting with a minus and a digit or dot is treated as a value
    rather than an option (no option here looks like a negative number).
    """

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(r"^-(\d|\.\d)")

    def error(self, message):
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ellgauss", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate one function at one point")
    ev.add_argument(
        "--fn",
        required=True,
        choices=["zeta", "Z", "wp", "wp_prime", "F", "theta11", "theta00"],
    )
    ev.add_argument("--tau", type=parse_complex, help="modulus; lattice is Z + Z*tau")
    ev.add_argument("--omega1", type=parse_complex)
    ev.add_argument("--omega2", type=parse_complex)
    ev.add_argument("--x", type=parse_complex, required=True)
    ev.add_argument("--y", type=parse_complex, help="second argument (F only)")
    ev.add_argument("--order", type=int, default=0, help="theta11 derivative order")
    ev.add_argument("--tol", type=float, default=1e-12)
    ev.add_argument("--format", choices=["json", "csv", "plain"], default="json")
    ev.add_argument("--timestamps", action="store_true")

    vf = sub.add_parser("verify", help="run the identity verification suite")
    vf.add_argument("--suite", choices=["all"], default="all")
    vf.add_argument("--tol", type=float, default=1e-10)
    vf.add_argument("--n", type=int, default=4, help="grid points per direction")
    vf.add_argument(
        "--tau",
        type=parse_complex,
        action="append",
        help="modulus to test (repeatable); default is the built-in set",
    )
    vf.add_argument("--indent", type=int, default=2)
    vf.add_argument("--timestamps", action="store_true")

    bn = sub.add_parser("bench", help="convergence benchmark as CSV")
    bn.add_argument("--tau", type=parse_complex, default=1j)
    bn.add_argument("--x", type=parse_complex, default=0.3 + 0.2j)

    tr = sub.add_parser("triple", help="triple-product coefficient vs its reference")
    tr.add_argument("--case", required=True, choices=["A", "B"])
    tr.add_argument("--tau", type=parse_complex, required=True)
    tr.add_argument("--u", type=parse_complex, help="first shift (case A)")
    tr.add_argument("--v", type=parse_complex, required=True)
    tr.add_argument("--tol", type=float, default=1e-10)
    tr.add_argument("--threshold", type=float, default=1e-8)
    tr.add_argument("--timestamps", action="store_true")
    return parser


def _eval_lattice(args):
    if args.tau is not None:
        if args.omega1 is not None or args.omega2 is not None:
            raise _UsageError("give either --tau or --omega1/--omega2, not both")
        return make_lattice(1.0, args.tau)
    if args.omega1 is None or args.omega2 is None:
        raise _UsageError("lattice input required: --tau or both --omega1 and --omega2")
    return make_lattice(args.omega1, args.omega2)


def _cmd_eval(args) -> int:
    lat = _eval_lattice(args)
    tau = lat.omega2 / lat.omega1
    inputs: dict = {"x": _c_dict(args.x), "tol": args.tol}
    result = None
    if args.fn == "F":
        if args.y is None:
            raise _UsageError("--y is required for F")
        inputs["y"] = _c_dict(args.y)
        result = gs.kronecker_F(tau, args.x, args.y, args.tol)
        value = result.value
    elif args.fn == "zeta":
        result = qp.zeta(lat, args.x, args.tol)
        value = result.value
    elif args.fn == "Z":
        result = gs.hecke_z(lat, args.x, args.tol)
        value = result.value
    elif args.fn == "wp":
        result = gs.wp(lat, args.x, args.tol)
        value = result.value
    elif args.fn == "wp_prime":
        result = gs.wp_prime(lat, args.x, args.tol)
        value = result.value
    elif args.fn == "theta11":
        inputs["order"] = args.order
        value = oracles.theta11(tau, args.x, args.order)
    else:
        value = oracles.theta00(tau, args.x)

    payload = {
        "function": args.fn,
        "lattice": {"omega1": _c_dict(lat.omega1), "omega2": _c_dict(lat.omega2)},
        "input": inputs,
        "value": _c_dict(value),
        "abs_error_estimate": result.abs_error_estimate if result else None,
        "terms_used": result.terms_used if result else None,
        "radius": result.radius if result else None,
    }
    if args.timestamps:
        payload["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat()

    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    elif args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(
            ["function", "x", "value", "abs_error_estimate", "terms_used", "radius"]
        )
        writer.writerow(
            [
                args.fn,
                format_complex(args.x),
                format_complex(value),
                payload["abs_error_estimate"],
                payload["terms_used"],
                payload["radius"],
            ]
        )
    else:
        print(f"{args.fn}({format_complex(args.x)}) = {format_complex(value)}")
        if result:
            print(
                f"abs_error_estimate = {result.abs_error_estimate!r}, "
                f"terms_used = {result.terms_used}, radius = {result.radius!r}"
            )
    return EXIT_OK


def _cmd_verify(args) -> int:
    if args.tau:
        lattices = [(1.0 + 0j, t) for t in args.tau]
    else:
        lattices = verify_mod.default_lattices()
    report = verify_mod.run_suite(lattices, GridSpec(n=args.n), args.tol)
    print(report.to_json(include_timing=args.timestamps, indent=args.indent))
    return EXIT_OK if report.overall_pass else EXIT_CHECK_FAILED


def _bench_rows(tau: complex, x: complex):
    lat = oracles.lattice_for_tau(tau)
    reference = oracles.zeta_theta_oracle(tau, x)
    for tol in _BENCH_TOLS:
        t0 = time.perf_counter_ns()
        res = qp.zeta(lat, x, tol)
        dt = time.perf_counter_ns() - t0
        yield ["zeta", format_complex(tau), format_complex(x), tol, "gaussian",
               res.terms_used, abs(res.value - reference), dt]
    for tol, radius in zip(_BENCH_TOLS, _BENCH_CLASSICAL_RADII):
        t0 = time.perf_counter_ns()
        val = oracles.zeta_classical(lat, x, radius)
        dt = time.perf_counter_ns() - t0
        npts = int(shell(lat, radius).size)
        yield ["zeta", format_complex(tau), format_complex(x), tol, "classical",
               npts, abs(val - reference), dt]
    f_tau = 1.2j if tau.imag <= 1.0 else tau
    fx, fy = 0.2 + 0.3j, 0.1 + 0.4j
    f_reference = oracles.F_theta(f_tau, fx, fy)
    for tol in _BENCH_TOLS:
        t0 = time.perf_counter_ns()
        res = gs.kronecker_F(f_tau, fx, fy, tol)
        dt = time.perf_counter_ns() - t0
        yield ["F", format_complex(f_tau), format_complex(fx), tol, "gaussian",
               res.terms_used, abs(res.value - f_reference), dt]
    for tol in _BENCH_TOLS:
        t0 = time.perf_counter_ns()
        val, nterms = oracles._F_qseries_counted(
            f_tau, fx, fy, max(tol * 1e-2, 1e-16), 0
        )
        dt = time.perf_counter_ns() - t0
        yield ["F", format_complex(f_tau), format_complex(fx), tol, "qseries",
               nterms, abs(val - f_reference), dt]


def _cmd_bench(args) -> int:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(
        ["function", "tau", "x", "tol", "method", "terms_used", "achieved_error", "wall_time_ns"]
    )
    for row in _bench_rows(args.tau, args.x):
        writer.writerow(row)
    return EXIT_OK


def _cmd_triple(args) -> int:
    if args.case == "A":
        if args.u is None:
            raise _UsageError("--u is required for case A")
        case = tp.TripleCase.case_a(args.u, args.v)
        coeff = tp.triple_coefficient(case, args.tau, args.tol)
        reference = 2j * math.pi * gs.kronecker_F(args.tau, args.u, -args.v, args.tol).value
    else:
        if args.u not in (None, 0j):
            raise _UsageError("case B fixes u = 0; omit --u")
        case = tp.TripleCase.case_b(args.v)
        coeff = tp.triple_coefficient(case, args.tau, args.tol)
        lat = oracles.lattice_for_tau(args.tau)
        reference = -gs.hecke_z(lat, args.v, args.tol).value
    residual = abs(coeff - reference)
    payload = {
        "case": args.case,
        "tau": _c_dict(args.tau),
        "u": _c_dict(case.u),
        "v": _c_dict(case.v),
        "coefficient": _c_dict(coeff),
        "reference": _c_dict(reference),
        "residual": residual,
        "threshold": args.threshold,
        "pass": residual <= args.threshold,
    }
    if args.timestamps:
        payload["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    print(json.dumps(payload, sort_keys=True))
    return EXIT_OK if residual <= args.threshold else EXIT_CHECK_FAILED


def main(argv: list[str] | None = None) -> int:
    """Run the CLI; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "eval":
            return _cmd_eval(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "bench":
            return _cmd_bench(args)
        return _cmd_triple(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EllgaussError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


def entry() -> None:
    """Console-script entry point."""
    sys.exit(main())
