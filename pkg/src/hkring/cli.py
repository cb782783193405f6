"""Command line interface.

Exit codes: 0 success, 1 parse or usage error, 2 validation failure,
3 resource budget exceeded.  All randomness flows through the --seed
flag and is recorded in the report, so identical invocations produce
byte-identical output.
"""

from __future__ import annotations

import argparse
import sys

from .arrangement import GiveUpError, sample_datum
from .datumio import DatumParseError, emit_datum, load_datum
from .groebner import Budget
from .polynomials import MonomialOrder
from .presentations import cotangent_projective_datum
from .report import build_report, render_json, render_text

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_BUDGET = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _parse_u_extra(text: str) -> tuple[tuple[int, ...], ...]:
    """Parse extra u-vectors: entries comma-separated, vectors by ';'."""
    vectors = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            vectors.append(tuple(int(e.strip()) for e in chunk.split(",")))
        except ValueError:
            raise DatumParseError(f"--u-extra: malformed vector {chunk!r}") from None
    return tuple(vectors)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--order", choices=("grevlex", "lex", "grlex"), default="grevlex")
    p.add_argument("--budget", type=int, default=None, help="max Groebner pair reductions")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--u-extra", default="", help="extra u vectors, e.g. '1,1;2,-1'")
    p.add_argument("--zz", action="store_true", help="integer-coefficient strong-basis checks")
    p.add_argument("--figures", metavar="DIR", default=None, help="render figures into DIR")
    p.add_argument("-o", "--output", default=None, help="write the report to a file")


def build_parser() -> _Parser:
    parser = _Parser(prog="hkring", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check splitness and smoothness")
    p.add_argument("path")
    _add_common(p)

    p = sub.add_parser("analyze", help="hyperplanes, empty subsets, vertices")
    p.add_argument("path")
    _add_common(p)

    p = sub.add_parser("present", help="ring presentations with Groebner data")
    p.add_argument("path")
    p.add_argument("--which", choices=("cohomology", "ktheory", "both"), default="both")
    p.add_argument("--verify", action="store_true", help="run the verification suite")
    _add_common(p)

    p = sub.add_parser("verify", help="alias for present --verify --which both")
    p.add_argument("path")
    _add_common(p)

    p = sub.add_parser("example", help="emit a built-in datum file")
    p.add_argument("kind", choices=("cotangent",))
    p.add_argument("n", type=int)
    p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("random", help="rejection-sample an admissible datum")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-attempts", type=int, default=1000)
    p.add_argument("-o", "--output", default=None)

    return parser


def _write(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_report(report: dict, args) -> None:
    text = render_json(report) if args.format == "json" else render_text(report)
    _write(text, args.output)


def _figures(report: dict, d, args) -> None:
    if not args.figures:
        return
    from .figures import render_report_figures

    stem = "datum"
    if getattr(args, "path", None):
        import os

        stem = os.path.splitext(os.path.basename(args.path))[0]
    betti = report.get("ranks", {}).get("betti")
    written = render_report_figures(args.figures, stem, d, betti)
    report["figures"] = written


def _run_report_command(
    args, command: str, which: str, verify: bool, with_presentations: bool,
    with_arrangement: bool = True,
) -> int:
    try:
        d = load_datum(args.path)
        extra = _parse_u_extra(args.u_extra)
    except DatumParseError as e:
        print(f"hkring: {e}", file=sys.stderr)
        return EXIT_USAGE
    budget = Budget(max_pairs=args.budget) if args.budget is not None else Budget()
    report, code = build_report(
        d,
        command=command,
        which=which,
        order=MonomialOrder(args.order),
        seed=args.seed,
        budget=budget,
        extra_us=extra,
        verify=verify,
        zz=args.zz,
        with_arrangement=with_arrangement,
        with_presentations=with_presentations,
    )
    if code == EXIT_OK:
        _figures(report, d, args)
    _emit_report(report, args)
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "validate":
        return _run_report_command(args, "validate", "both", False, False, with_arrangement=False)
    if args.command == "analyze":
        return _run_report_command(args, "analyze", "both", False, False)
    if args.command == "present":
        return _run_report_command(args, "present", args.which, args.verify, True)
    if args.command == "verify":
        return _run_report_command(args, "verify", "both", True, True)

    if args.command == "example":
        if args.n < 1:
            print("hkring: n must be >= 1", file=sys.stderr)
            return EXIT_USAGE
        _write(emit_datum(cotangent_projective_datum(args.n)), args.output)
        return EXIT_OK

    if args.command == "random":
        if not args.m >= args.n >= 1:
            print("hkring: need m >= n >= 1", file=sys.stderr)
            return EXIT_USAGE
        try:
            d, attempts = sample_datum(args.m, args.n, args.seed, args.max_attempts)
        except GiveUpError as e:
            print(f"hkring: {e}", file=sys.stderr)
            return EXIT_VALIDATION
        _write(emit_datum(d), args.output)
        print(f"attempts: {attempts}", file=sys.stderr)
        return EXIT_OK

    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
