#!/usr/bin/env python3
"""
Command-line interface for signed-engel.
"""
import argparse
import json
import logging
import re
import sys
from pathlib import Path
from typing import Any, Literal, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, model_validator

from sengel.config import load_settings
from sengel.errors import PrecisionExhausted
from sengel.expansion import SignedEngelExpansion, StopReason, expand_certified, expand_rational, reconstruct
from sengel.expansion.signed_engel import DEFAULT_MAX_DIGITS_BALL, DEFAULT_MAX_DIGITS_RATIONAL
from sengel.intervals import basic_interval
from sengel.markov import BeyondCap, ChainSource, simulate_chunks, write_trajectory_csv
from sengel.numerics import ball_from_decimal, format_rational, parse_rational, to_decimal_string
from sengel.stats import SUITES, PhiFunction, Verdict, create_suite, run_all, write_raw_csv
from sengel.symbolic import Variant, check_admissible, parse_symbols

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_PRECISION = 3

RATIONAL_INPUT = re.compile(r"^\s*[+-]?\d+\s*(/\s*\d+\s*)?$")

logger = logging.getLogger("sengel_cli")


def write_output(content: str, out: Optional[str]) -> None:
    """Print to stdout, or write to a file when --out is given."""
    if out:
        output_path = Path(out)
        output_path.parent.mkdir(parents=True, exist_ok=True)
        with open(output_path, "w") as f:
            f.write(content)
        print(f"Output written to: {output_path}", file=sys.stderr)
    else:
        print(content)


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise ValueError(f"Expected a comma-separated list of integers, got {text!r}")


def parse_sign_list(text: str) -> list[int]:
    """'+,-,+' or '1,-1,1'."""
    signs = []
    for token in text.replace(",", " ").split():
        if token in ("+", "+1", "1"):
            signs.append(1)
        elif token in ("-", "-1"):
            signs.append(-1)
        else:
            raise ValueError(f"Not a sign {token!r} in {text!r}")
    return signs


def cmd_expand(args) -> int:
    if RATIONAL_INPUT.match(args.input):
        x = parse_rational(args.input)
        e = expand_rational(x, max_digits=args.max_digits or DEFAULT_MAX_DIGITS_RATIONAL)
    else:
        ball = ball_from_decimal(args.input, extra_radius_log2=args.extra_radius_log2)
        e = expand_certified(ball, max_digits=args.max_digits or DEFAULT_MAX_DIGITS_BALL)
        print(f"Certified {e.certified_prefix_len} digits ({e.stop_reason.value})", file=sys.stderr)
    write_output(e.model_dump_json(indent=2), args.out)
    return EXIT_PRECISION if e.stop_reason == StopReason.PRECISION_EXHAUSTED else EXIT_OK


def cmd_reconstruct(args) -> int:
    e = SignedEngelExpansion.from_digits(parse_int_list(args.digits), parse_sign_list(args.signs))
    value = reconstruct(e, args.n)
    content = json.dumps({
        "value": format_rational(value),
        "decimal": to_decimal_string(value, 30),
    }, indent=2)
    write_output(content, args.out)
    return EXIT_OK


def cmd_admissible(args) -> int:
    variant = Variant.SIGMA_N_PRIME if args.variant == "prime" else Variant.SIGMA_N
    verdict = check_admissible(parse_symbols(args.sequence), variant)
    write_output(verdict.model_dump_json(indent=2), args.out)
    return EXIT_OK


def cmd_interval(args) -> int:
    interval = basic_interval(parse_symbols(args.sequence))
    write_output(interval.model_dump_json(indent=2), args.out)
    return EXIT_OK


def cmd_simulate(args) -> int:
    settings = load_settings(threads=args.threads)
    source = ChainSource(args.chain)
    batches = simulate_chunks(source, args.n, args.count, args.seed, keep_last=args.keep_last,
                              beyond_cap=BeyondCap(args.beyond_cap), settings=settings)
    metadata = {"seed": args.seed, "source": source.value, "n": args.n, "count": args.count,
                "beyond_cap": args.beyond_cap, "dropped": 0, "saturated": 0}

    def counted(stream):
        for batch in stream:
            metadata["dropped"] += batch.dropped
            metadata["saturated"] += batch.saturated_count()
            yield batch

    print(f"Simulating {args.count} {source.value} trajectories of length {args.n}...", file=sys.stderr)
    if args.out:
        output_path = Path(args.out)
        output_path.parent.mkdir(parents=True, exist_ok=True)
        with open(output_path, "w", newline="") as f:
            lines = write_trajectory_csv(counted(batches), f)
        print(f"Output written to: {output_path} ({lines} lines)", file=sys.stderr)
    else:
        write_trajectory_csv(counted(batches), sys.stdout)

    if args.metadata:
        write_output(json.dumps(metadata, indent=2, sort_keys=True), args.metadata)
    return EXIT_OK


def cmd_verify(args) -> int:
    settings = load_settings(threads=args.threads)
    options = {"n": args.n, "count": args.count}
    if args.chain:
        options["chain"] = ChainSource(args.chain)
    if args.phi:
        options["phi"] = PhiFunction.parse(args.phi)

    if args.suite == "all":
        report = run_all(args.seed, settings, **options)
    else:
        suite = create_suite(args.suite, settings, **options)
        report = suite.run(args.seed)
        if args.csv:
            csv_path = Path(args.csv)
            csv_path.parent.mkdir(parents=True, exist_ok=True)
            with open(csv_path, "w", newline="") as f:
                rows = write_raw_csv(suite.raw, f)
            print(f"Raw statistics written to: {csv_path} ({rows} rows)", file=sys.stderr)

    print(f"Suite {report.suite}: {report.verdict.value}", file=sys.stderr)
    write_output(report.to_json(), args.out)
    return EXIT_OK if report.verdict == Verdict.PASS else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="signed-engel",
        description="Signed Engel expansions, their cylinders and the statistics of their digits.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s expand --input 2/5
  %(prog)s expand --input 0.7071067811865475244008443621048490392848 --max-digits 8
  %(prog)s reconstruct --digits 2,5 --signs +,-
  %(prog)s interval --sequence "2 -1 4"
  %(prog)s simulate --chain exact --n 100 --count 1000 --seed 42 --out runs/exact.csv
  %(prog)s verify --suite bb --seed 42 --phi nlogpow:3
        """
    )
    parser.add_argument("--verbose", "-v", action="store_true", help="Debug logging on stderr")
    sub = parser.add_subparsers(dest="verb", required=True)

    def with_out(p: argparse.ArgumentParser) -> argparse.ArgumentParser:
        p.add_argument("--out", "-o", type=str, help="Output file. If not specified, prints to stdout.")
        return p

    expand = with_out(sub.add_parser("expand", help="Signed Engel expansion of a rational or a decimal"))
    expand.add_argument("--input", required=True, help='"p/q" (exact) or a decimal (certified)')
    expand.add_argument("--max-digits", type=int, help="Digit limit (default 64 for rationals, 256 for decimals)")
    expand.add_argument("--extra-radius-log2", type=int, help="Widen a decimal input by 2^-e")
    expand.set_defaults(handler=cmd_expand)

    rec = with_out(sub.add_parser("reconstruct", help="Exact value of a finite expansion"))
    rec.add_argument("--digits", required=True, help='Digits, e.g. "2,5"')
    rec.add_argument("--signs", required=True, help='Cumulative signs, e.g. "+,-"')
    rec.add_argument("--n", type=int, help="Partial sum up to this many digits")
    rec.set_defaults(handler=cmd_reconstruct)

    adm = with_out(sub.add_parser("admissible", help="Check a digit/sign sequence"))
    adm.add_argument("--sequence", required=True, help='Interleaved symbols, e.g. "2 +1 4"')
    adm.add_argument("--variant", choices=["plain", "prime"], default="plain",
                     help="prime also requires an even final digit")
    adm.set_defaults(handler=cmd_admissible)

    interval = with_out(sub.add_parser("interval", help="Basic interval of a sequence"))
    interval.add_argument("--sequence", required=True, help='Interleaved symbols, e.g. "2 -1 4"')
    interval.set_defaults(handler=cmd_interval)

    sim = with_out(sub.add_parser("simulate", help="Simulate digit-chain trajectories as CSV"))
    sim.add_argument("--chain", choices=[ChainSource.EXACT_CHAIN.value, ChainSource.SURROGATE_CHAIN.value],
                     required=True)
    sim.add_argument("--n", type=int, required=True, help="Trajectory length")
    sim.add_argument("--count", type=int, required=True, help="Number of trajectories")
    sim.add_argument("--seed", type=int, required=True)
    sim.add_argument("--beyond-cap", choices=[b.value for b in BeyondCap], default=BeyondCap.LOG.value)
    sim.add_argument("--keep-last", type=int, help="Keep only the last m steps of each trajectory")
    sim.add_argument("--metadata", type=str, help="Write batch metadata JSON to this file")
    sim.add_argument("--threads", type=int, help="Worker bound (overrides SIGNED_ENGEL_THREADS)")
    sim.set_defaults(handler=cmd_simulate)

    ver = with_out(sub.add_parser("verify", help="Run a verification suite"))
    ver.add_argument("--suite", choices=[*SUITES, "all"], required=True)
    ver.add_argument("--seed", type=int, required=True)
    ver.add_argument("--phi", type=str, help='Threshold for the bb suite, e.g. "power:1" or "nlogpow:3"')
    ver.add_argument("--n", type=int, help="Override the suite's trajectory length (or digits for yn)")
    ver.add_argument("--count", type=int, help="Override the suite's sample size")
    ver.add_argument("--chain", choices=[ChainSource.EXACT_CHAIN.value, ChainSource.SURROGATE_CHAIN.value],
                     help="Override the simulated chain")
    ver.add_argument("--csv", type=str, help="Write raw per-trajectory statistics to this CSV file")
    ver.add_argument("--threads", type=int, help="Worker bound (overrides SIGNED_ENGEL_THREADS)")
    ver.set_defaults(handler=cmd_verify)

    return parser


class Command(BaseModel):
    """A parsed invocation: the verb, its flags and where the output goes."""
    model_config = ConfigDict(frozen=True)

    verb: Literal["expand", "reconstruct", "admissible", "interval", "simulate", "verify"]
    options: dict[str, Any] = {}
    out: Optional[str] = None

    @model_validator(mode="after")
    def _check_flags(self) -> "Command":
        options = self.options
        for name in ("n", "count", "max_digits", "keep_last", "threads"):
            value = options.get(name)
            if value is not None and value < 1:
                raise ValueError(f"--{name.replace('_', '-')} must be >= 1, got {value}")
        if options.get("extra_radius_log2") is not None and options["extra_radius_log2"] < 0:
            raise ValueError("--extra-radius-log2 must be >= 0")
        if options.get("suite") == "all" and options.get("csv"):
            raise ValueError("--csv needs a single suite")
        if options.get("phi") and options.get("suite") not in ("bb", "all"):
            raise ValueError("--phi only applies to the bb suite")
        return self

    @classmethod
    def from_namespace(cls, args: argparse.Namespace) -> "Command":
        options = {key: value for key, value in vars(args).items()
                   if key not in ("verb", "out", "verbose", "handler") and value is not None}
        return cls(verb=args.verb, options=options, out=getattr(args, "out", None))


def main(argv: Optional[list[str]] = None) -> int:
    """Main entry point for the CLI."""
    load_dotenv()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        command = Command.from_namespace(args)
        logger.debug(f"Running {command.verb} with {command.options}")
        return args.handler(args)
    except PrecisionExhausted as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_PRECISION
    except ValueError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
