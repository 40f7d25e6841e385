"""Command-line front end: counts, compare, decode, and simulate subcommands."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import lpsolver
from .channel import Awgn, Bsc, ChannelError, CostVector
from .codes import CodeError, ParityCheckMatrix, builtin_code, parse_alist
from .decoder import DecodeError, decode
from .relaxation import RelaxationError
from .simulate import TrialRecord, run_compare, run_counts, run_simulate

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_SOLVER_CAP = 3


class InputError(Exception):
    pass


def load_code(source: str) -> ParityCheckMatrix:
    """Load 'builtin:NAME' or an alist file path."""
    if source.startswith("builtin:"):
        return builtin_code(source[len("builtin:"):])
    path = Path(source)
    if not path.is_file():
        raise InputError(f"no such code file: {source}")
    return parse_alist(path.read_text())


def parse_channel(spec: str):
    kind, _, arg = spec.partition(":")
    try:
        value = float(arg)
    except ValueError:
        raise InputError(f"bad channel spec {spec!r}; expected bsc:p or awgn:sigma") from None
    if kind == "bsc":
        return Bsc(p=value)
    if kind == "awgn":
        return Awgn(sigma=value)
    raise InputError(f"unknown channel kind {kind!r}")


def parse_gamma(spec: str, n: int) -> CostVector:
    """Comma-separated values, or @FILE with whitespace/comma-separated values."""
    if spec.startswith("@"):
        text = Path(spec[1:]).read_text().replace(",", " ")
        parts = text.split()
    else:
        parts = spec.split(",")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise InputError(f"non-numeric cost entry in {spec!r}") from None
    if len(vals) != n:
        raise InputError(f"expected {n} costs, got {len(vals)}")
    return CostVector(gammas=tuple(vals))


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _counts_csv(report) -> str:
    d = report.to_json_dict()
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["field", "value"])
    for k, v in d.items():
        if not isinstance(v, dict):
            w.writerow([k, v])
    return buf.getvalue()


def cmd_counts(args) -> int:
    H = load_code(args.code)
    report = run_counts(H, code_name=args.code)
    if args.format == "csv":
        _emit(_counts_csv(report), args.out)
    else:
        _emit(json.dumps(report.to_json_dict(), indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_compare(args) -> int:
    H = load_code(args.code)
    report = run_compare(H, args.num_gammas, args.seed, code_name=args.code,
                         all_positive=args.all_positive)
    if args.format == "csv":
        _emit(_counts_csv(report), args.out)
    else:
        _emit(json.dumps(report.to_json_dict(with_timing=args.timing), indent=2) + "\n",
              args.out)
    return EXIT_OK


def cmd_decode(args) -> int:
    H = load_code(args.code)
    gamma = parse_gamma(args.gamma, H.n)
    outcome = decode(H, gamma, args.formulation)
    d = outcome.to_json_dict()
    if not args.timing:
        d.pop("wall_clock_ns")
    _emit(json.dumps(d, indent=2) + "\n", args.out)
    return EXIT_OK


def _records_csv(records: list[TrialRecord], with_timing: bool) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    header = list(TrialRecord.CSV_FIELDS)
    if with_timing:
        header.append("wall_clock_ns")
    w.writerow(header)
    for r in records:
        w.writerow(r.csv_row(with_timing))
    return buf.getvalue()


def cmd_simulate(args) -> int:
    H = load_code(args.code)
    ch = parse_channel(args.channel)
    records, summary = run_simulate(H, ch, args.trials, args.seed, args.formulation)
    if args.format == "json":
        _emit(json.dumps(summary, indent=2) + "\n", args.out)
    else:
        _emit(_records_csv(records, args.timing), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lpdecode",
                                description="LP decoding of binary linear codes: "
                                            "odd-subset relaxation vs degree-3 chain reformulation.")
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("--code", required=True,
                        help="alist file path or builtin:{paper-example,hamming-7-4,ldpc-48-24}")
        sp.add_argument("--out", default=None, help="output file (default stdout)")
        sp.add_argument("--format", choices=("csv", "json"), default=None)
        sp.add_argument("--timing", action="store_true",
                        help="include wall-clock fields (breaks byte-identical reruns)")

    sp = sub.add_parser("counts", help="constraint-count table for both formulations")
    add_common(sp)
    sp.set_defaults(func=cmd_counts, default_format="json")

    sp = sub.add_parser("compare", help="solve both formulations on random costs")
    add_common(sp)
    sp.add_argument("--num-gammas", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--all-positive", action="store_true",
                    help="force positive costs (zero codeword optimal)")
    sp.set_defaults(func=cmd_compare, default_format="json")

    sp = sub.add_parser("decode", help="decode one cost vector")
    add_common(sp)
    sp.add_argument("--gamma", required=True, help="comma-separated costs or @FILE")
    sp.add_argument("--formulation", choices=("feldman", "decomposed"), default="feldman")
    sp.set_defaults(func=cmd_decode, default_format="json")

    sp = sub.add_parser("simulate", help="Monte Carlo FER/BER trials")
    add_common(sp)
    sp.add_argument("--channel", required=True, help="bsc:p or awgn:sigma")
    sp.add_argument("--trials", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--formulation", choices=("feldman", "decomposed", "both"),
                    default="feldman")
    sp.set_defaults(func=cmd_simulate, default_format="csv")

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = args.default_format
    try:
        return args.func(args)
    except lpsolver.IterationLimitError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SOLVER_CAP
    except (InputError, CodeError, ChannelError, RelaxationError, DecodeError,
            ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
