"""Command-line front end: build, query, edit, stats, bench.

Exit codes: 0 ok, 2 usage, 3 bad input, 4 corrupt index, 5 output failure.
"""
from __future__ import annotations

import argparse
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import serialize
from .bench import run_bench, write_csv
from .corpus import CORPORA, tokenize_bytes, tokenize_words
from .dynamic import DynamicColorIndex
from .errors import ColorCountError, CorruptIndexError, ValidationError
from .schemes import DYNAMIC, SCHEMES, build_index, to_dynamic

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_CORRUPT = 4
EXIT_OUTPUT = 5


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load_index(path):
    try:
        return serialize.load(path)
    except CorruptIndexError as exc:
        raise CliError(f"{path}: corrupt index: {exc}", EXIT_CORRUPT) from exc
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror or exc}", EXIT_INPUT) from exc


def _save_index(path, index, alphabet) -> None:
    try:
        serialize.save(path, index, alphabet)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror or exc}", EXIT_OUTPUT) from exc


def _read_lines(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read().splitlines()
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror or exc}", EXIT_INPUT) from exc


def _ints(parts, lineno, expected):
    if len(parts) != expected:
        raise CliError(f"line {lineno}: expected {expected} integers", EXIT_INPUT)
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise CliError(f"line {lineno}: malformed integer in {' '.join(parts)!r}",
                       EXIT_INPUT) from None


def cmd_build(args) -> int:
    try:
        with open(args.input, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise CliError(f"{args.input}: {exc.strerror or exc}", EXIT_INPUT) from exc
    if args.alphabet == "bytes":
        s, alphabet = tokenize_bytes(data)
    else:
        try:
            s, alphabet = tokenize_words(data.decode("utf-8"))
        except UnicodeDecodeError as exc:
            raise CliError(f"{args.input}: not UTF-8 text", EXIT_INPUT) from exc
    if s.n == 0:
        raise CliError("empty input", EXIT_INPUT)
    try:
        t0 = time.perf_counter()
        index = build_index(args.scheme, s, args.delta, args.block_len)
        elapsed = time.perf_counter() - t0
    except ValidationError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc
    _save_index(args.output, index, alphabet)
    report = index.space_report()
    print(f"n={s.n} sigma={s.sigma} h0={report.metrics.get('h0', 0.0):.4f} "
          f"total_bits={report.total_bits} build_s={elapsed:.3f} scheme={args.scheme}")
    return EXIT_OK


def cmd_query(args) -> int:
    index, _ = _load_index(args.index)
    queries = []
    if args.batch:
        for lineno, line in enumerate(_read_lines(args.batch), start=1):
            if line.strip():
                queries.append((lineno, *_ints(line.split(), lineno, 2)))
    elif args.i is not None and args.j is not None:
        queries.append((0, args.i, args.j))
    else:
        raise CliError("give I J or --batch FILE", EXIT_USAGE)

    def answer(q):
        lineno, i, j = q
        try:
            return index.count(i, j)
        except ColorCountError as exc:
            where = f"line {lineno}: " if lineno else ""
            raise CliError(f"{where}{exc}", EXIT_INPUT) from exc

    threads = args.threads if not isinstance(index, DynamicColorIndex) else 1
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            results = list(pool.map(answer, queries))
    else:
        results = map(answer, queries)
    for count in results:
        print(count)
    return EXIT_OK


def apply_script(index: DynamicColorIndex, lines, out=None) -> None:
    out = out or sys.stdout
    for lineno, line in enumerate(lines, start=1):
        parts = line.split()
        if not parts or parts[0].startswith("#"):
            continue
        op, rest = parts[0].upper(), parts[1:]
        try:
            if op == "R":
                j, y = _ints(rest, lineno, 2)
                if not 0 <= y < index.sigma:
                    raise ValidationError(f"symbol {y} outside [0, {index.sigma})")
                index.replace_char(j, y)
            elif op == "D":
                (j,) = _ints(rest, lineno, 1)
                index.delete_char(j)
            elif op == "A":
                (c,) = _ints(rest, lineno, 1)
                index.append_char(c)
            elif op == "Q":
                i, j = _ints(rest, lineno, 2)
                print(index.count(i, j), file=out)
            else:
                raise CliError(f"line {lineno}: unknown operation {parts[0]!r}", EXIT_INPUT)
        except ColorCountError as exc:
            raise CliError(f"line {lineno}: {exc}", EXIT_INPUT) from exc


def cmd_edit(args) -> int:
    index, alphabet = _load_index(args.index)
    lines = _read_lines(args.script)
    try:
        dyn = to_dynamic(index)
    except ValidationError as exc:
        raise CliError(str(exc), EXIT_INPUT) from exc
    apply_script(dyn, lines)
    output = args.output or (args.index if index.scheme == DYNAMIC else None)
    if output:
        _save_index(output, dyn, alphabet)
    return EXIT_OK


def cmd_stats(args) -> int:
    index, _ = _load_index(args.index)
    report = index.space_report()
    if args.format == "kv":
        print("\n".join(report.kv_lines()))
    else:
        print(report.table())
    return EXIT_OK


def cmd_bench(args) -> int:
    sizes = [1 << e for e in range(args.min_exp, args.max_exp + 1, args.step)]
    try:
        rows = run_bench(sizes, args.corpora, args.schemes, args.sigma, args.seed,
                         args.queries, args.repeat, not args.no_timing, args.delta)
    except ValidationError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc
    if args.csv:
        try:
            with open(args.csv, "w", newline="") as fh:
                write_csv(rows, fh, not args.no_timing)
        except OSError as exc:
            raise CliError(f"cannot write {args.csv}: {exc.strerror or exc}", EXIT_OUTPUT) from exc
    else:
        write_csv(rows, sys.stdout, not args.no_timing)
    return EXIT_OK


def _positive_float(text: str) -> float:
    val = float(text)
    if not val > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return val


def _positive_int(text: str) -> int:
    val = int(text)
    if val < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return val


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="colorcount", description="Count distinct symbols in substrings of compressed strings.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="index a file")
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--scheme", choices=SCHEMES, default="multisize")
    p.add_argument("--alphabet", choices=("bytes", "tokens"), default="bytes")
    p.add_argument("--delta", type=_positive_float)
    p.add_argument("--block-len", type=_positive_int)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("query", help="count distinct symbols in s[i..j]")
    p.add_argument("index")
    p.add_argument("i", type=int, nargs="?")
    p.add_argument("j", type=int, nargs="?")
    p.add_argument("--batch", help='file of "i j" lines')
    p.add_argument("--threads", type=_positive_int, default=1)
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("edit", help="apply an R/D/A/Q edit script")
    p.add_argument("index")
    p.add_argument("--script", required=True)
    p.add_argument("-o", "--output", help="snapshot path (default: in place for dynamic indexes)")
    p.set_defaults(func=cmd_edit)

    p = sub.add_parser("stats", help="space report")
    p.add_argument("index")
    p.add_argument("--format", choices=("table", "kv"), default="table")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("bench", help="space/time sweep over generated corpora")
    p.add_argument("--min-exp", type=int, default=10)
    p.add_argument("--max-exp", type=int, default=16)
    p.add_argument("--step", type=_positive_int, default=2)
    p.add_argument("--corpora", nargs="+", choices=CORPORA, default=list(CORPORA))
    p.add_argument("--schemes", nargs="+", choices=SCHEMES, default=list(SCHEMES))
    p.add_argument("--sigma", type=_positive_int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--queries", type=_positive_int, default=1000)
    p.add_argument("--repeat", type=_positive_int, default=5)
    p.add_argument("--delta", type=_positive_float)
    p.add_argument("--csv")
    p.add_argument("--no-timing", action="store_true",
                   help="omit timing columns so output is byte-for-byte reproducible")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
