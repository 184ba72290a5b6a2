"""Command-line interface: ``bandsym solve|reduce|bench|report``.

Exit codes: 0 success, 1 usage or input error, 2 singular matrix,
3 not enough sizes for an alpha estimate.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bench, report
from .band import BandError, system_from_json, system_to_json
from .reduce import ReductionPivotZero, reduce_chain
from .solvers import ALGORITHMS, FloatZeroPivot, SingularMatrix, solve

EXIT_OK, EXIT_USAGE, EXIT_SINGULAR, EXIT_NODATA = 0, 1, 2, 3

ALIASES = {"td": "STDM", "pd": "SPDM", "hd": "SHDM",
           "stdm": "STDM", "spdm": "SPDM", "shdm": "SHDM"}
WIDTHS = {"td": 1, "pd": 2, "hd": 3}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _split(values):
    out = []
    for v in values:
        out.extend(p for p in v.split(",") if p)
    return out


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        Path(path).write_text(text)


def _dump(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def cmd_solve(args) -> int:
    try:
        system = system_from_json(_read_text(args.input), args.backend, args.storage)
    except (OSError, BandError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        result = solve(system)
    except SingularMatrix as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except FloatZeroPivot as exc:
        print(f"error: {exc}; retry with --backend exact", file=sys.stderr)
        return EXIT_USAGE
    _write_text(args.output, _dump(result.to_json()))
    return EXIT_OK


def cmd_reduce(args) -> int:
    try:
        system = system_from_json(_read_text(args.input), "exact", args.storage)
        rep = reduce_chain(system, WIDTHS[args.to])
    except (OSError, BandError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ReductionPivotZero as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    _write_text(args.output, _dump(system_to_json(rep.reduced)))
    doc = _dump(rep.to_json())
    if args.report:
        Path(args.report).write_text(doc)
    else:
        sys.stderr.write(doc)
    return EXIT_OK


def cmd_bench(args) -> int:
    try:
        sizes = [int(s) for s in _split(args.sizes)]
        algorithms = [ALIASES[a.lower()] for a in _split(args.algorithms)]
        storages = [s.lower() for s in _split(args.storage)]
    except (ValueError, KeyError) as exc:
        print(f"error: bad flag value {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.reps < 1:
        print("error: --reps must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    for s in storages:
        if s not in ("fixed", "list"):
            print(f"error: unknown storage {s!r}", file=sys.stderr)
            return EXIT_USAGE
    for alg in algorithms:
        w = ALGORITHMS[alg]
        for n in sizes:
            if n < 2 * w + 1:
                print(f"error: n = {n} too small for {alg} (need n >= {2 * w + 1})", file=sys.stderr)
                return EXIT_USAGE

    try:
        for storage in storages:
            for alg in algorithms:
                for n in sizes:
                    spec = bench.GenSpec(n, ALGORITHMS[alg], args.seed, args.backend, storage)
                    system, planted = bench.generate_system(spec)
                    records = bench.time_run(alg, system, args.reps, planted)
                    bench.write_csv(args.csv, records)
                    mean = sum(r.seconds for r in records) / len(records)
                    print(f"{alg} {storage} {args.backend} n={n}: mean {mean:.6f} s over {args.reps}",
                          file=sys.stderr)
    except KeyboardInterrupt:
        print("interrupted; completed records are in the CSV", file=sys.stderr)
        return 130
    return EXIT_OK


def cmd_report(args) -> int:
    try:
        records = bench.read_csv(args.csv)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: cannot read {args.csv}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if not records:
        print("error: CSV holds no records", file=sys.stderr)
        return EXIT_USAGE

    print(report.format_mean_table(records))
    if args.alpha:
        try:
            alphas = bench.alpha_table(records)
        except bench.DomainError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_NODATA
        print()
        print(report.format_alpha_table(alphas))
    if args.ratios:
        try:
            ratios = bench.ratio_table(records)
        except bench.MissingSeries as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_NODATA
        print()
        print(report.format_ratio_table(ratios))
    if args.svg:
        Path(args.svg).write_text(report.render_svg(records))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bandsym", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="solve a band system from JSON")
    s.add_argument("--input", required=True, help="system JSON ('-' for stdin)")
    s.add_argument("--storage", choices=["fixed", "list"], default="fixed")
    s.add_argument("--backend", choices=["exact", "float"], default="exact")
    s.add_argument("--output", default="-", help="solution JSON ('-' for stdout)")
    s.set_defaults(func=cmd_solve)

    r = sub.add_parser("reduce", help="reduce a HD/PD system to a narrower band")
    r.add_argument("--input", required=True)
    r.add_argument("--to", choices=["pd", "td"], required=True)
    r.add_argument("--storage", choices=["fixed", "list"], default="fixed")
    r.add_argument("--output", default="-", help="reduced system JSON ('-' for stdout)")
    r.add_argument("--report", help="reduction report JSON (default: stderr)")
    r.set_defaults(func=cmd_reduce)

    b = sub.add_parser("bench", help="time solves and append records to a CSV")
    b.add_argument("--sizes", nargs="+", required=True)
    b.add_argument("--algorithms", nargs="+", default=["td,pd,hd"])
    b.add_argument("--storage", nargs="+", default=["fixed"])
    b.add_argument("--backend", choices=["exact", "float"], default="exact")
    b.add_argument("--reps", type=int, default=5)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--csv", required=True)
    b.set_defaults(func=cmd_bench)

    t = sub.add_parser("report", help="summarize a benchmark CSV")
    t.add_argument("--csv", required=True)
    t.add_argument("--alpha", action="store_true", help="order-of-growth table")
    t.add_argument("--ratios", action="store_true", help="HD:TD and PD:TD time ratios")
    t.add_argument("--svg", help="write a bar chart here")
    t.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
