"""Command-line surface.

Commands: compute, table, hunt, verify, selftest.  Exit codes: 0 success,
1 selftest failure, 2 invalid arguments, 3 I/O failure, 4 corrupt results
file, 5 congruence counterexample.
"""

from __future__ import annotations

import argparse
import json
import multiprocessing
import os
import sys

from . import congruence, recurrence, selftest, series
from .congruence import HuntRecord

RECORD_FIELDS = (
    "ell", "j", "q", "interesting", "witness_n", "n0", "kappa",
    "elapsed_ms", "checked_terms",
)


def record_to_line(rec: HuntRecord) -> str:
    return json.dumps({name: getattr(rec, name) for name in RECORD_FIELDS})


def record_from_line(line: str) -> HuntRecord:
    data = json.loads(line)
    return HuntRecord(**{name: data[name] for name in RECORD_FIELDS})


def _write_output(text: str, path: str | None) -> int:
    try:
        if path is None:
            sys.stdout.write(text)
        else:
            with open(path, "w") as f:
                f.write(text)
    except OSError as e:
        print(f"error: cannot write output: {e}", file=sys.stderr)
        return 3
    return 0


def cmd_compute(args) -> int:
    if args.n < 0:
        print(f"error: n must be non-negative, got {args.n}", file=sys.stderr)
        return 2
    if args.mod is not None and (args.mod < 3 or args.mod % 2 == 0):
        print(f"error: modulus must be odd and >= 3, got {args.mod}", file=sys.stderr)
        return 2
    if args.mod is None:
        value = series.overpartition(args.n)
    else:
        value = series.overpartition_mod(args.n, args.mod)
    return _write_output(f"{value}\n", args.output)


def cmd_table(args) -> int:
    if args.n_max < 0:
        print(f"error: n_max must be non-negative, got {args.n_max}", file=sys.stderr)
        return 2
    table = recurrence.recursion_table(args.n_max)
    lines = "".join(f"{n} {v}\n" for n, v in enumerate(table.values))
    return _write_output(lines, args.output)


def _hunt_one(job: tuple[int, int, int]) -> HuntRecord:
    return congruence.hunt(*job)


def _load_done(path: str) -> tuple[set[tuple[int, int, int]], int] | int:
    """Keys of already-recorded hunts, or the exit code 4 on a bad file."""
    done = set()
    try:
        with open(path) as f:
            for lineno, line in enumerate(f, start=1):
                if not line.strip():
                    print(f"error: corrupt results file at line {lineno}", file=sys.stderr)
                    return 4
                try:
                    rec = record_from_line(line)
                except (json.JSONDecodeError, KeyError, TypeError):
                    print(f"error: corrupt results file at line {lineno}", file=sys.stderr)
                    return 4
                done.add((rec.ell, rec.j, rec.q))
    except FileNotFoundError:
        pass
    except OSError as e:
        print(f"error: cannot read results file: {e}", file=sys.stderr)
        return 3
    return done, 0


def cmd_hunt(args) -> int:
    try:
        todo = congruence.candidate_primes(args.ell, args.j, args.qmax)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    done: set[tuple[int, int, int]] = set()
    if args.output is not None:
        loaded = _load_done(args.output)
        if isinstance(loaded, int):
            return loaded
        done = loaded[0]
    jobs = [(args.ell, args.j, q) for q in todo if (args.ell, args.j, q) not in done]
    workers = args.workers
    if workers is None:
        workers = int(os.environ.get("OVERPARTITION_WORKERS", 0)) or os.cpu_count() or 1
    try:
        sink = open(args.output, "a") if args.output is not None else sys.stdout
    except OSError as e:
        print(f"error: cannot open results file: {e}", file=sys.stderr)
        return 3
    try:
        if workers > 1 and len(jobs) > 1:
            # imap yields in submission order, so lines append in ascending
            # Q no matter which worker finishes first
            with multiprocessing.Pool(workers) as pool:
                for rec in pool.imap(_hunt_one, jobs):
                    sink.write(record_to_line(rec) + "\n")
                    sink.flush()
        else:
            for job in jobs:
                rec = _hunt_one(job)
                sink.write(record_to_line(rec) + "\n")
                sink.flush()
    finally:
        if sink is not sys.stdout:
            sink.close()
    return 0


def cmd_verify(args) -> int:
    if args.count < 1:
        print(f"error: count must be positive, got {args.count}", file=sys.stderr)
        return 2
    try:
        samples = congruence.valid_samples(args.ell, args.q, args.count)
        checks = congruence.verify_congruence(args.ell, args.j, args.q, samples)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    failed = False
    for chk in checks:
        status = "ok" if chk.ok else "FAIL"
        print(f"n={chk.n} argument={chk.argument} residue={chk.residue} {status}")
        if not chk.ok:
            print(
                f"counterexample: count({chk.argument}) = {chk.residue} "
                f"(mod {args.ell}^{args.j})",
                file=sys.stderr,
            )
            failed = True
    return 5 if failed else 0


def cmd_selftest(args) -> int:
    for name, suite in selftest.SUITES:
        try:
            checks = suite()
        except AssertionError as e:
            print(f"{name}: FAIL ({e})")
            return 1
        print(f"{name}: ok ({checks} checks)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="overpartition",
        description="Overpartition counts, exactly or modulo odd integers, "
        "and congruence hunting",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="one overpartition count")
    p.add_argument("n", type=int)
    p.add_argument("--mod", type=int, default=None, help="odd modulus >= 3")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("table", help="counts for 0..n_max, one per line")
    p.add_argument("n_max", type=int)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("hunt", help="run the congruence search over candidates")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--qmax", type=int, required=True)
    p.add_argument("-o", "--output", default=None, help="append-only results file")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_hunt)

    p = sub.add_parser("verify", help="spot-check a found congruence family")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--count", type=int, default=5)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("selftest", help="run the invariant suites")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
