"""Command-line interface: ``xorgens {gen,params,verify,search,selftest,bench}``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time

from . import analysis, engine, params as paramdb, search, statcheck
from .factors import FactorTableError, load_table

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_UNLISTED = 3
EXIT_FACTORS = 4
EXIT_MISMATCH = 5
EXIT_INCOMPLETE = 6
EXIT_NO_SOLUTION = 7

_CHUNK_WORDS = 4096


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _u64(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError(f"seed must be in [0, 2^64): {text}")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {text}")
    return v


def _fail(code: int, message: str) -> int:
    print(f"xorgens: {message}", file=sys.stderr)
    return code


def _resolve_row(w: int | None, n: int | None) -> paramdb.XorgensParams:
    if w is None:
        w = 64
    if n is None:
        n = max(p.n for p in paramdb.rows(w=w)) if paramdb.rows(w=w) else 0
    return paramdb.lookup(w, n)


def _warn_small(p: paramdb.XorgensParams) -> None:
    if p.n <= 128:
        print(
            f"xorgens: warning: n={p.n} generators are not recommended (matrix-rank weakness); use n >= 256",
            file=sys.stderr,
        )


def _emit(out, words: list[int], fmt: str, w: int) -> None:
    if fmt == "raw":
        nbytes = w // 8
        out.buffer.write(b"".join(v.to_bytes(nbytes, "little") for v in words))
    elif fmt == "hex":
        width = w // 4
        out.write("".join(f"{v:0{width}x}\n" for v in words))


def cmd_gen(args) -> int:
    p = _resolve_row(args.w, args.n)
    _warn_small(p)
    state = engine.seed(p, args.seed)
    out = sys.stdout
    remaining = args.count
    try:
        if args.format == "real":
            while remaining is None or remaining > 0:
                k = _CHUNK_WORDS if remaining is None else min(_CHUNK_WORDS, remaining)
                out.write("".join(f"{x:.17g}\n" for x in state.next_reals(k)))
                if remaining is not None:
                    remaining -= k
        else:
            while remaining is None or remaining > 0:
                k = _CHUNK_WORDS if remaining is None else min(_CHUNK_WORDS, remaining)
                _emit(out, state.next_words(k), args.format, p.w)
                if remaining is not None:
                    remaining -= k
        out.flush()
    except BrokenPipeError:
        # downstream consumer closed the pipe: normal end of an unbounded stream
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
    return EXIT_OK


def cmd_params(args) -> int:
    selected = paramdb.rows(args.w, args.n)
    if not selected:
        return _fail(EXIT_UNLISTED, f"unlisted parameter row (w={args.w}, n={args.n})")
    header = ("w", "n", "r", "s", "a", "b", "c", "d", "delta", "W")
    table = [header] + [
        tuple(str(v) for v in (p.w, p.n, p.r, p.s, p.a, p.b, p.c, p.d, p.delta, p.weight)) for p in selected
    ]
    widths = [max(len(row[i]) for row in table) for i in range(len(header))]
    for row in table:
        print("  ".join(cell.rjust(width) for cell, width in zip(row, widths)))
    print()
    for p in selected:
        print(p.key_values())
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        paramdb.lookup(args.w, args.n)
    except paramdb.UnlistedRowError as exc:
        return _fail(EXIT_UNLISTED, str(exc))
    try:
        factors = load_table(args.n, args.factors)
    except FactorTableError as exc:
        return _fail(EXIT_FACTORS, f"factor table error: {exc}")
    try:
        report = analysis.verify_row(args.w, args.n, factors)
    except analysis.VerificationError as exc:
        print(exc.report.summary())
        return _fail(EXIT_MISMATCH, f"verification failed: {exc}")
    print(report.summary())
    print("OK")
    return EXIT_OK


def cmd_search(args) -> int:
    try:
        factors = load_table(args.w * args.r, args.factors)
    except FactorTableError as exc:
        return _fail(EXIT_FACTORS, f"factor table error: {exc}")
    outcome = search.search_optimal(
        args.w,
        args.r,
        factors,
        delta_floor=args.delta_floor,
        budget=args.budget,
        workers=args.workers,
        distinct_shifts=not args.allow_repeated_shifts,
    )
    result = outcome.as_dict()
    if args.json:
        print(json.dumps(result, sort_keys=True))
    else:
        for key, value in result.items():
            if isinstance(value, dict):
                value = " ".join(f"{k}={v}" for k, v in value.items()) or "-"
            print(f"{key}={value}")
    if not outcome.complete:
        return EXIT_INCOMPLETE
    return EXIT_OK if outcome.found is not None else EXIT_NO_SOLUTION


def cmd_selftest(args) -> int:
    rows = statcheck.selftest(quick=args.quick)
    name_w = max(len(r.name) for r in rows)
    row_w = max(len(r.row) for r in rows)
    failed = 0
    for r in rows:
        status = "info" if r.ok is None else ("PASS" if r.ok else "FAIL")
        failed += r.ok is False
        print(f"{r.name.ljust(name_w)}  {r.row.ljust(row_w)}  {status:4}  {r.value}")
    print(f"{len(rows)} checks, {failed} failed")
    return EXIT_FAILED if failed else EXIT_OK


def cmd_bench(args) -> int:
    p = _resolve_row(args.w, args.n)
    _warn_small(p)
    state = engine.seed(p, 1)
    words = 0
    start = time.perf_counter()
    while time.perf_counter() - start < args.seconds:
        state.next_words(_CHUNK_WORDS)
        words += _CHUNK_WORDS
    elapsed = time.perf_counter() - start
    print(f"w={p.w} n={p.n} words={words} seconds={elapsed:.3f} words_per_second={words / elapsed:.0f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="xorgens", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="emit the combined output stream")
    g.add_argument("--w", type=int, choices=(32, 64))
    g.add_argument("--n", type=int)
    g.add_argument("--seed", type=_u64, default=1)
    g.add_argument("--count", type=_nonneg, help="number of outputs (unbounded if omitted)")
    g.add_argument("--format", choices=("raw", "hex", "real"), default="raw")
    g.set_defaults(func=cmd_gen)

    p = sub.add_parser("params", help="print parameter table rows")
    p.add_argument("--w", type=int)
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_params)

    v = sub.add_parser("verify", help="recompute and check a table row")
    v.add_argument("--w", type=int, required=True)
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--factors", help="factor file overriding the shipped tables")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="search for optimal parameters")
    s.add_argument("--w", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--delta-floor", type=int, default=1)
    s.add_argument("--budget", type=float, help="time budget in seconds")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--factors", help="factor file overriding the shipped tables")
    s.add_argument(
        "--allow-repeated-shifts", action="store_true",
        help="drop the distinct-shift rule and apply criteria 1-7 only",
    )
    s.add_argument("--json", action="store_true", help="emit one JSON object")
    s.set_defaults(func=cmd_search)

    t = sub.add_parser("selftest", help="run the statistical diagnostics")
    t.add_argument("--quick", action="store_true")
    t.set_defaults(func=cmd_selftest)

    b = sub.add_parser("bench", help="measure throughput")
    b.add_argument("--w", type=int, choices=(32, 64))
    b.add_argument("--n", type=int)
    b.add_argument("--seconds", type=float, default=1.0)
    b.set_defaults(func=cmd_bench)
    return parser


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verbose:
        logging.basicConfig(level=logging.INFO, format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except paramdb.UnlistedRowError as exc:
        return _fail(EXIT_UNLISTED, str(exc))
    except ValueError as exc:
        return _fail(EXIT_FAILED, str(exc))


def main() -> None:
    sys.exit(run())
