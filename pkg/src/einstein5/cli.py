"""Command line interface.

Exit codes: 0 when the certificate or check passes, 1 when a check fails,
2 on malformed input.
"""
from __future__ import annotations

import argparse
import sys

from .exact_linalg import format_fraction, to_fraction
from .kahler_einstein import ConfigurationError, klt_box_check
from .seifert import SeifertDataError, classify
from .certifier import (
    InputError,
    FamilyParams,
    certify,
    emit_certificate,
    enumerate_parameters,
    family_params,
    parse_config,
    parse_seifert_input,
)

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def cmd_certify(args) -> int:
    if args.config and args.symmetric:
        raise InputError("--config and --symmetric are mutually exclusive")
    if args.config:
        config = parse_config(_read(args.config), args.k)
        params = FamilyParams(args.k, args.m1, args.m2, config)
    else:
        c = None
        if args.symmetric:
            c = [to_fraction(x) for x in args.symmetric.split(",") if x.strip()]
        params = family_params(args.k, args.m1, args.m2, c=c)
    cert = certify(params)
    sys.stdout.write(emit_certificate(cert, args.format))
    return EXIT_OK if cert.passed else EXIT_FAILED


def cmd_enumerate(args) -> int:
    if args.k < 6 or args.max < 3:
        raise InputError("enumerate needs --k >= 6 and --max >= 3")
    pairs = enumerate_parameters(args.k, args.max)
    print(f"k = {args.k} summands ({args.k - 1} blown-up points), m1, m2 <= {args.max}: "
          f"{len(pairs)} pairs")
    for m1, m2 in pairs:
        print(f"{m1} {m2}")
    return EXIT_OK


def cmd_h1(args) -> int:
    sd = parse_seifert_input(_read(args.input))
    r = classify(sd)
    print(f"H1 = {r.h1 if r.h1 is not None else 'not computed'}")
    print(f"a = {r.a_lcm}")
    print("c1 = (" + ", ".join(format_fraction(x) for x in r.c1.coords) + ")")
    print("a*c1 = (" + ", ".join(format_fraction(x) for x in r.integral_class.coords) + f"), gcd {r.gcd}")
    print(f"divisors part of a basis: {r.basis_ok}")
    print(f"w2 = 0: {r.w2_zero}")
    print(f"rank H^3: {r.h3_rank if r.h3_rank is not None else '-'}")
    print(f"simply connected: {r.simply_connected}")
    print(f"diffeomorphism type: {r.diffeo_type or 'undetermined'}")
    for note in r.notes:
        print(f"note: {note}")
    return EXIT_OK if r.diffeo_type else EXIT_FAILED


def cmd_klt_check(args) -> int:
    report = klt_box_check(args.kprime, to_fraction(args.b1), to_fraction(args.b2))
    print(f"{args.kprime} blown-up points, b1 = {format_fraction(report.b1)}, "
          f"b2 = {format_fraction(report.b2)}")
    for r in report.records:
        v = ", ".join(format_fraction(x) for x in r.attaining_vertex)
        print(f"  [{'PASS' if r.passed else 'FAIL'}] {r.label}: worst case "
              f"{format_fraction(r.worst_case_value)} vs bound {format_fraction(r.bound)} at ({v})")
    print("klt suite:", "pass" if report.passed else "fail")
    return EXIT_OK if report.passed else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="einstein5", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", help="certify the bundle for (k, m1, m2)")
    p.add_argument("--k", type=int, required=True, help="number of S^2 x S^3 summands")
    p.add_argument("--m1", type=int, required=True)
    p.add_argument("--m2", type=int, required=True)
    p.add_argument("--config", metavar="FILE", help="point configuration document")
    p.add_argument("--symmetric", metavar="C1,C2,...", help="parameters of the symmetric configuration")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("enumerate", help="list admissible (m1, m2)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max", type=int, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("h1", help="classify a Seifert bundle given as a JSON document")
    p.add_argument("--input", metavar="FILE", required=True)
    p.set_defaults(func=cmd_h1)

    p = sub.add_parser("klt-check", help="worst-case klt inequalities")
    p.add_argument("--kprime", type=int, required=True, help="number of blown-up points")
    p.add_argument("--b1", required=True)
    p.add_argument("--b2", required=True)
    p.set_defaults(func=cmd_klt_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, SeifertDataError, ConfigurationError, ValueError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
