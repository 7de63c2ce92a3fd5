"""
Command-line interface.

    ncfree enumerate N [--class all|p-alt|p-prsv|eps-alt] [--eps E] [--json]
    ncfree kreweras PI [--relative RHO] [--inverse]
    ncfree series {zeta,moeb,sum} --nvars K --degree D [-o FILE]
    ncfree boxstar F G [-o FILE]
    ncfree transform {r-from-m,m-from-r} F [-o FILE] [--recursive] [--cross-check]
    ncfree suites
    ncfree verify SUITE [--degree D] [--instances N] [--seed S] [--workers W]
                        [--json PATH|-] [--timing] [--stages]

Exit codes: 0 success or suite passed, 1 suite failed (or two computation
routes disagreed), 2 usage or domain error.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from ncfree.config import configure_logging, load_settings
from ncfree.core.epscomp import EpsString, enumerate_eps_alternating
from ncfree.core.freespace import MomentFunctional, m_from_r, r_from_m, r_from_m_recursive
from ncfree.core.ncpart import (
    enumerate_nc,
    enumerate_parity_class,
    kreweras,
    kreweras_inverse,
    relative_kreweras,
)
from ncfree.core.ncseries import NCSeries, boxstar, moeb_series, sum_series, zeta_series
from ncfree.errors import ConsistencyError, DomainError
from ncfree.utils.literals import format_partition, parse_eps, parse_partition
from ncfree.utils.series_io import load_series, series_to_json

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

CLASSES = ("all", "p-alt", "p-prsv", "eps-alt")
NAMED_SERIES = {"zeta": zeta_series, "moeb": moeb_series, "sum": sum_series}


def _emit(text: str, output: Optional[str]) -> None:
    """Write to a file, or to stdout for None / "-"."""
    if output is None or output == "-":
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")
        logger.info("wrote %s", output)


# ============================================================================
# Subcommands
# ============================================================================

def cmd_enumerate(args: argparse.Namespace) -> int:
    n = args.n
    if args.cls == "all":
        parts = list(enumerate_nc(n))
    elif args.cls in ("p-alt", "p-prsv"):
        parts = enumerate_parity_class(n, args.cls)
    else:
        if args.eps is None:
            raise DomainError("--class eps-alt needs --eps")
        eps = EpsString(parse_eps(args.eps))
        if eps.m != n:
            raise DomainError(f"eps {eps} has length {eps.m}, expected {n}")
        parts = enumerate_eps_alternating(eps)

    literals = [format_partition(pi) for pi in parts]
    if args.json:
        payload = {"n": n, "class": args.cls, "count": len(literals), "partitions": literals}
        if args.eps is not None:
            payload["eps"] = args.eps
        print(json.dumps(payload, indent=2))
    else:
        for literal in literals:
            print(literal)
        print(f"count: {len(literals)}")
    return EXIT_OK


def cmd_kreweras(args: argparse.Namespace) -> int:
    pi = parse_partition(args.partition)
    if args.relative is not None:
        rho = parse_partition(args.relative, pi.n)
        if rho.n != pi.n:
            raise DomainError(f"Ground sets differ: {pi.n} vs {rho.n}")
        result = relative_kreweras(pi, rho)
    elif args.inverse:
        result = kreweras_inverse(pi)
    else:
        result = kreweras(pi)
    print(format_partition(result))
    return EXIT_OK


def cmd_series(args: argparse.Namespace) -> int:
    series = NAMED_SERIES[args.name](args.nvars, args.degree)
    _emit(series_to_json(series), args.output)
    return EXIT_OK


def cmd_boxstar(args: argparse.Namespace) -> int:
    f = load_series(args.f)
    g = load_series(args.g)
    _emit(series_to_json(boxstar(f, g)), args.output)
    return EXIT_OK


def cmd_transform(args: argparse.Namespace) -> int:
    source: NCSeries = load_series(args.file)
    if args.direction == "r-from-m":
        moments = MomentFunctional(source)
        result = r_from_m_recursive(moments) if args.recursive else r_from_m(moments)
    else:
        result = m_from_r(source, cross_check=args.cross_check).series
    _emit(series_to_json(result), args.output)
    return EXIT_OK


def cmd_suites(args: argparse.Namespace) -> int:
    from ncfree.verify.suites import SUITES

    for spec in SUITES.values():
        accepted = spec.degree_range()
        print(
            f"{spec.name:10s} degree {spec.degree:2d} ({accepted.start}..{accepted.stop - 1}), "
            f"instances {spec.instances:2d}  {spec.summary}"
        )
    print(f"{'all':10s} every suite with its defaults")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    from ncfree.verify.suites import run_suite

    report = run_suite(
        args.suite,
        degree=args.degree,
        instances=args.instances,
        seed=args.seed,
        workers=args.workers,
    )
    # stdout carries only the JSON when it is the report target
    text_stream = sys.stderr if args.json == "-" else sys.stdout
    print(report.to_text(show_stages=args.stages, include_timing=args.timing), file=text_stream)
    if args.json is not None:
        _emit(report.to_json(include_timing=args.timing), args.json)
    return EXIT_OK if report.passed else EXIT_FAILED


# ============================================================================
# Parser
# ============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncfree",
        description="Exact non-crossing partition and free cumulant computations.",
    )
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logging"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="List NC(n) or one of its classes")
    p.add_argument("n", type=int, help="Ground-set size")
    p.add_argument("--class", dest="cls", choices=CLASSES, default="all")
    p.add_argument("--eps", help="Epsilon string for --class eps-alt, e.g. 1212")
    p.add_argument("--json", action="store_true", help="Print JSON instead of a listing")
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser("kreweras", help="Kreweras complement of a partition literal")
    p.add_argument("partition", help='Partition literal, e.g. "{1,4,5}{2,3}{6,8}{7}"')
    group = p.add_mutually_exclusive_group()
    group.add_argument("--relative", metavar="RHO", help="Relative complement inside RHO")
    group.add_argument("--inverse", action="store_true", help="Inverse complement")
    p.set_defaults(handler=cmd_kreweras)

    p = sub.add_parser("series", help="Write Zeta, Moeb or Sum as a series file")
    p.add_argument("name", choices=sorted(NAMED_SERIES))
    p.add_argument("--nvars", type=int, default=1)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("-o", "--output", help="Output file (default stdout)")
    p.set_defaults(handler=cmd_series)

    p = sub.add_parser("boxstar", help="Boxed-star product of two series files")
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("-o", "--output", help="Output file (default stdout)")
    p.set_defaults(handler=cmd_boxstar)

    p = sub.add_parser("transform", help="Moment / cumulant series conversion")
    p.add_argument("direction", choices=("r-from-m", "m-from-r"))
    p.add_argument("file")
    p.add_argument("-o", "--output", help="Output file (default stdout)")
    p.add_argument("--recursive", action="store_true",
                   help="r-from-m: use the first-block recursion instead of M * Moeb")
    p.add_argument("--cross-check", action="store_true",
                   help="m-from-r: also evaluate the NC(k) sum and compare")
    p.set_defaults(handler=cmd_transform)

    p = sub.add_parser("suites", help="List the verification suites")
    p.set_defaults(handler=cmd_suites)

    p = sub.add_parser("verify", help="Run a verification suite")
    p.add_argument("suite")
    p.add_argument("--degree", type=int)
    p.add_argument("--instances", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument(
        "--json",
        metavar="PATH",
        help="Write the JSON report to PATH ('-': stdout, the text report goes to stderr)",
    )
    p.add_argument("--timing", action="store_true", help="Include wall time and stage timings")
    p.add_argument("--stages", action="store_true", help="Show the stage log")
    p.set_defaults(handler=cmd_verify)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    try:
        settings = load_settings()
        if args.verbose >= 2:
            level = "DEBUG"
        elif args.verbose == 1:
            level = "INFO"
        else:
            level = settings.log_level
        configure_logging(level)
        return args.handler(args)
    except (DomainError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ConsistencyError as e:
        print(f"inconsistent: {e}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
