"""Command-line front end: ``mine``, ``support`` and ``split``.

Exit codes: 0 success, 1 usage/config error, 2 I/O or input format error,
3 arithmetic overflow.
"""
from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction
from typing import Sequence as Seq

from .ingest import InputError, InputSpec, read_database, split_fixed_length, write_plain, write_results
from .matcher import brute_force_support
from .miner import DEFAULT_MAX_LEN, MiningResult, mine
from .model import (
    GapConstraint, PatternParseError, Threshold, WideOverflowError,
    decimal_string, is_frequent, ofs_total, parse_pattern,
)

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_OVERFLOW = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _threshold(text: str) -> Threshold:
    try:
        return Threshold.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _gap(text: str) -> GapConstraint:
    try:
        return GapConstraint.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a value >= 1, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="negspm", description="Mine frequent positive and negative gap patterns.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--input", default="-", help="input file, '-' for stdin (default)")
    common.add_argument("--format", choices=("plain", "fasta"), default="plain")
    common.add_argument("--tokenizer", choices=("char", "token"), default="char")
    common.add_argument("--permissive", action="store_true",
                        help="accept non-letter characters inside FASTA records")
    common.add_argument("--output", help="write results here instead of stdout")

    p = sub.add_parser("mine", parents=[common], help="mine all frequent patterns")
    p.add_argument("--rho", type=_threshold, required=True, help="support-rate threshold, e.g. 0.013")
    p.add_argument("--gap", type=_gap, required=True, help="gap constraint M,N")
    p.add_argument("--max-len", type=_positive_int, default=DEFAULT_MAX_LEN)
    p.add_argument("--positives-only", action="store_true")
    p.add_argument("--out-format", choices=("json", "csv"), default="csv")
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--verbose", action="store_true", help="per-level timing on stderr")

    p = sub.add_parser("support", parents=[common], help="count one pattern's occurrences")
    p.add_argument("pattern")
    p.add_argument("--gap", type=_gap, required=True)
    p.add_argument("--rho", type=_threshold, help="also report whether the pattern is frequent")
    p.add_argument("--verbose", action="store_true", help="list every occurrence")

    p = sub.add_parser("split", parents=[common], help="cut sequences into fixed-length pieces")
    p.add_argument("--chunk", type=_positive_int, required=True)
    return parser


def _open_out(path):
    return open(path, "w", encoding="utf-8", newline="") if path else None


def _spec(args) -> InputSpec:
    return InputSpec(args.input, args.format, args.tokenizer, permissive=args.permissive)


def _report_stats(result: MiningResult, elapsed: float, verbose: bool) -> None:
    err = sys.stderr
    for s in result.stats.levels:
        line = f"level {s.length}: {s.candidates} candidates, {s.frequent} frequent"
        if verbose:
            line += f", {s.seconds:.3f}s"
        print(line, file=err)
    print(f"total: {len(result)} frequent patterns, {result.stats.total_candidates} candidates, "
          f"{elapsed:.3f}s, ~{result.stats.peak_kv_bytes} bytes of key-value arrays", file=err)


def run_mine(args) -> int:
    db = read_database(_spec(args))
    t0 = time.perf_counter()
    result = mine(db, args.rho, args.gap, args.max_len,
                  positives_only=args.positives_only, workers=args.workers)
    elapsed = time.perf_counter() - t0
    fh = _open_out(args.output)
    try:
        write_results(result, args.out_format, fh or sys.stdout, args.tokenizer)
    finally:
        if fh:
            fh.close()
    _report_stats(result, elapsed, args.verbose)
    return EXIT_OK


def run_support(args) -> int:
    db = read_database(_spec(args))
    pattern = parse_pattern(args.pattern, db.alphabet, args.gap, tokenizer=args.tokenizer)
    ofs = ofs_total(db.total_length, args.gap.width, len(pattern))
    fh = _open_out(args.output)
    out = fh or sys.stdout
    total = 0
    try:
        for s in db.sequences:
            count, occurrences = brute_force_support(pattern, s, args.gap)
            total += count
            print(f"sequence {s.seq_id + 1}: {count}", file=out)
            if args.verbose:
                for occ in occurrences:
                    print("  <" + ",".join(map(str, occ)) + ">", file=out)
        print(f"support: {total}", file=out)
        print(f"ofs: {ofs}", file=out)
        rate = decimal_string(Fraction(total, ofs)) if ofs else "undefined"
        print(f"rate: {rate}", file=out)
        if args.rho is not None and ofs:
            verdict = "yes" if is_frequent(total, ofs, args.rho) else "no"
            print(f"frequent at {args.rho}: {verdict}", file=out)
    finally:
        if fh:
            fh.close()
    return EXIT_OK


def run_split(args) -> int:
    db = split_fixed_length(read_database(_spec(args)), args.chunk)
    fh = _open_out(args.output)
    try:
        write_plain(db, fh or sys.stdout, args.tokenizer)
    finally:
        if fh:
            fh.close()
    return EXIT_OK


_COMMANDS = {"mine": run_mine, "support": run_support, "split": run_split}


def main(argv: Seq[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except WideOverflowError as exc:
        print(f"negspm: overflow: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except InputError as exc:
        print(f"negspm: input error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"negspm: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (PatternParseError, ValueError) as exc:
        print(f"negspm: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
