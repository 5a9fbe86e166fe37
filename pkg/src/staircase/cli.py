"""Command-line front end.

Exit status: 0 when every requested check passes, 1 when a check fails,
2 on a capability limit (the reason is printed as JSON on stderr) and 64 on
bad arguments.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from contextlib import contextmanager
from typing import Iterator, TextIO

from . import coxeter, enumeration, labelling, series, verify
from .errors import ArgumentError, CapabilityError, StaircaseError
from .graphs import build_dynkin

SCHEMA = "staircase/1"
EXIT_FAIL = 1
EXIT_CAPABILITY = 2
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="staircase", description="Count staircase diagrams and smooth Weyl group elements.")
    p.add_argument("--output", "-o", help="write to this file instead of stdout")
    p.add_argument("--oracle-cap", type=_positive, help="override STAIRCASE_ORACLE_CAP (default 5)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("count", help="count table by diagram enumeration and labelled counting")
    c.add_argument("--family", required=True, choices=["A", "B", "C", "D", "BC"])
    c.add_argument("--max-rank", required=True, type=_positive)
    c.add_argument("--format", choices=["csv", "json"], default="csv")
    c.add_argument("--threads", type=_positive, default=1, help="worker processes for A and D (default 1)")

    e = sub.add_parser("enumerate", help="stream every diagram over a Dynkin graph as JSON lines")
    e.add_argument("--family", required=True, choices=["A", "B", "C", "D"])
    e.add_argument("--rank", required=True, type=_positive)
    e.add_argument("--fully-supported", action="store_true")
    e.add_argument("--elementary", action="store_true", help="keep only fully supported elementary diagrams")

    s = sub.add_parser("series", help="generating-series coefficients")
    s.add_argument("--family", required=True, choices=list(series.RECURRENCE_FAMILIES))
    s.add_argument("--order", type=_positive, default=series.DEFAULT_ORDER)
    s.add_argument("--method", choices=["closed", "recurrence", "both"], default="both")
    s.add_argument("--format", choices=["csv", "json"], default="csv")

    v = sub.add_parser("verify", help="run the acceptance matrix")
    v.add_argument("--max-rank", type=_positive, default=9)
    v.add_argument("--only", type=_positive, action="append", help="run only this check (repeatable)")
    v.add_argument("--format", choices=["text", "jsonl"], default="text")

    o = sub.add_parser("oracle", help="rationally smooth count by Poincare palindromicity")
    o.add_argument("--family", required=True, choices=["A", "B", "C", "D", "BC"])
    o.add_argument("--rank", required=True, type=_positive)

    a = sub.add_parser("asymptotics", help="dominant singularity and growth constants")
    a.add_argument("--digits", type=_positive, default=15)

    b = sub.add_parser("bijection", help="round-trip Lambda and its inverse over all labelled diagrams")
    b.add_argument("--family", required=True, choices=["A", "B", "C", "D", "BC"])
    b.add_argument("--rank", required=True, type=_positive)
    return p


@contextmanager
def _sink(path: str | None) -> Iterator[TextIO]:
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _dump(obj: dict, out: TextIO) -> None:
    out.write(json.dumps(obj, sort_keys=True) + "\n")


def _count_rows(family: str, max_rank: int, threads: int) -> list[tuple[str, int, int]]:
    rows = []
    if family in ("A", "D"):
        lo = 3 if family == "D" else 1
        for n in range(lo, max_rank + 1):
            rows.append((family, n, enumeration.count_diagrams(build_dynkin(family, n), threads=threads)))
    else:
        for n in range(1, max_rank + 1):
            enumeration.check_budget(build_dynkin("B", n), enumeration.DEFAULT_MAX_RANK)
            rows.append((family, n, verify.bc_family_counts(n)[family]))
    return rows


def cmd_count(args, out: TextIO) -> int:
    rows = _count_rows(args.family, args.max_rank, args.threads)
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["family", "rank", "count"])
        w.writerows(rows)
    else:
        _dump({"schema": SCHEMA, "family": args.family, "counts": {str(n): c for _, n, c in rows}}, out)
    return 0


def cmd_enumerate(args, out: TextIO) -> int:
    g = build_dynkin(args.family, args.rank)
    for d in enumeration.enumerate_diagrams(g, fully_supported=args.fully_supported or args.elementary):
        if args.elementary and not d.is_elementary():
            continue
        _dump({"schema": SCHEMA, "family": args.family, "rank": args.rank, **d.to_json()}, out)
    return 0


def cmd_series(args, out: TextIO) -> int:
    fam = args.family
    if args.method in ("closed", "both") and fam not in series.CLOSED_FAMILIES:
        raise ArgumentError(f"no closed form for {fam}; use --method recurrence")
    if args.method == "both":
        closed = series.closed_form_series(fam, args.order)
        rec = series.recurrence_series(fam, args.order)
        m = closed.first_mismatch(rec)
        if args.format == "json":
            _dump({"schema": SCHEMA, "family": fam, "order": args.order, "first_mismatch": m}, out)
        else:
            out.write("equal\n" if m is None else f"mismatch at {m}\n")
        return 0 if m is None else EXIT_FAIL
    make = series.closed_form_series if args.method == "closed" else series.recurrence_series
    coeffs = make(fam, args.order).coefficients
    if args.format == "json":
        _dump({"schema": SCHEMA, "family": fam, "method": args.method, "coefficients": [str(c) for c in coeffs]}, out)
    else:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["family", "n", "coefficient"])
        w.writerows((fam, n, str(c)) for n, c in enumerate(coeffs))
    return 0


def cmd_verify(args, out: TextIO) -> int:
    ok = True
    known = {num for num, _, _ in verify.CHECKS}
    if args.only and not set(args.only) <= known:
        raise ArgumentError(f"unknown check(s) {sorted(set(args.only) - known)}")
    for num, _, _ in verify.CHECKS:
        if args.only and num not in args.only:
            continue
        r = verify.run_check(num, args.max_rank)
        ok &= r.passed
        if args.format == "jsonl":
            _dump(r.to_json(), out)
        else:
            out.write(r.line() + "\n")
        out.flush()
    return 0 if ok else EXIT_FAIL


def cmd_oracle(args, out: TextIO) -> int:
    fam = "B" if args.family == "BC" else args.family
    if fam == "D" and args.rank < 3:
        raise ArgumentError("type D needs rank at least 3")
    count = coxeter.count_rationally_smooth(fam, args.rank)
    _dump({"schema": SCHEMA, "family": args.family, "rank": args.rank, "rationally_smooth": count}, out)
    return 0


def cmd_asymptotics(args, out: TextIO) -> int:
    _dump(series.asymptotics(args.digits).to_json(), out)
    return 0


def cmd_bijection(args, out: TextIO) -> int:
    fam = args.family
    g = build_dynkin("B" if fam == "BC" else fam, args.rank)
    enumeration.check_budget(g, enumeration.DEFAULT_MAX_RANK)
    labelled = 0
    windows = set()
    failures = 0
    for d in enumeration.enumerate_diagrams(g):
        if not len(d):
            continue
        pool = labelling.classify_rs_labellings(d, "BC") if fam == "BC" else labelling.nearly_maximal_labellings(d, fam)
        for L in pool:
            same, w = verify._round_trip(L)
            labelled += 1
            failures += not same
            windows.add(w)
    record = {
        "schema": SCHEMA,
        "family": fam,
        "rank": args.rank,
        "labelled_diagrams": labelled,
        "distinct_elements": len(windows),
        "round_trip_failures": failures,
    }
    ok = failures == 0 and len(windows) == labelled
    if fam != "BC":
        group = coxeter.coxeter_group(fam, args.rank)
        oracle = sum(coxeter.has_complete_bp(w) for w in group.elements() if not w.is_identity)
        record["complete_bp_elements"] = oracle
        ok &= oracle == labelled
    record["passed"] = ok
    _dump(record, out)
    return 0 if ok else EXIT_FAIL


COMMANDS = {
    "count": cmd_count,
    "enumerate": cmd_enumerate,
    "series": cmd_series,
    "verify": cmd_verify,
    "oracle": cmd_oracle,
    "asymptotics": cmd_asymptotics,
    "bijection": cmd_bijection,
}


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    saved = os.environ.get("STAIRCASE_ORACLE_CAP")
    if args.oracle_cap is not None:
        os.environ["STAIRCASE_ORACLE_CAP"] = str(args.oracle_cap)
    try:
        with _sink(args.output) as out:
            return COMMANDS[args.command](args, out)
    except CapabilityError as exc:
        _dump({"schema": SCHEMA, "error": "capability", "reason": exc.reason, "message": str(exc)}, sys.stderr)
        return EXIT_CAPABILITY
    except StaircaseError as exc:
        _dump({"schema": SCHEMA, "error": "argument", "message": str(exc)}, sys.stderr)
        return EXIT_USAGE
    finally:
        if saved is None:
            os.environ.pop("STAIRCASE_ORACLE_CAP", None)
        else:
            os.environ["STAIRCASE_ORACLE_CAP"] = saved


def main() -> None:
    sys.exit(run())
