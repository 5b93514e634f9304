"""Command line interface.

Subcommands
-----------
mult      one graded (or weighted) multiplicity, optionally from both engines
series    a generating series, coefficient by coefficient
table     a whole multiplicity table as text / JSON / CSV
char      a graded character as (weight, grade, multiplicity) triples
dim       the dimension of a Demazure module
closed    the closed-form families (1to2, 2to3, carlitz, mocktheta, phi12,
          thmgenser1, dpoly, closedA)
verify    the identity suites, with a --max scaling knob

Output formats: text (default), json, csv.  JSON coefficients are decimal
strings so arbitrary precision survives; identical invocations produce
identical structured output except for the elapsed-time field.
Exit codes: 0 success, 1 failed verification, 2 bad arguments.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

from . import characters as ch
from . import closed_forms as cf
from . import flag_engine as fe
from . import gen_series as gs
from . import verify
from .errors import InvalidLevel, InvalidShape
from .qpoly import QPoly, XSeriesQ


def _poly_terms(p: QPoly, x_exp: int | None = None) -> list[dict]:
    out = []
    for e, c in p.terms():
        rec = {"q_exp": e, "coeff": str(c)}
        if x_exp is not None:
            rec = {"x_exp": x_exp, **rec}
        out.append(rec)
    return out


def _series_terms(s: XSeriesQ) -> list[dict]:
    out: list[dict] = []
    for d, c in enumerate(s.coeffs()):
        out.extend(_poly_terms(c, x_exp=d))
    return out


def _emit(args, record: dict, text: str) -> None:
    stream = open(args.out, "w") if args.out else sys.stdout
    try:
        if args.format == "json":
            json.dump(record, stream, indent=2, sort_keys=True)
            stream.write("\n")
        else:
            stream.write(text + "\n")
    finally:
        if args.out:
            stream.close()


def _engine_meta(engine: str, started: float) -> dict:
    stats = fe.memo_stats()
    return {
        "engine": engine,
        "memo_hits": stats["hits"],
        "elapsed_ms": round(1000.0 * (time.perf_counter() - started), 3),
    }


# ---------------------------------------------------------------------------
# subcommands

def _cmd_mult(args) -> int:
    started = time.perf_counter()
    step_val = fe.mult(args.from_level, args.weight, args.to_level, args.target)
    record: dict = {
        "query": {
            "command": "mult",
            "from_level": args.from_level,
            "weight": args.weight,
            "to_level": args.to_level,
            "target": args.target,
            "weighted": args.weighted,
            "engine": args.engine,
        }
    }
    if args.engine in ("partition", "both"):
        part = fe.Partition.for_demazure(args.from_level, args.weight)
        part_val = fe.mult_partition(part, args.to_level, args.target)
    if args.engine == "partition":
        value = part_val
    else:
        value = step_val

    lines = []
    if args.weighted:
        r, w = value.weight_split()
        record["result"] = {
            "display": str(w),
            "q_shift": r,
            "terms": _poly_terms(w),
        }
        lines.append(f"q^{r} * ({w})")
    else:
        record["result"] = {"display": str(value), "terms": _poly_terms(value)}
        lines.append(str(value))
    if args.engine == "both":
        match = step_val == part_val
        record["result"]["partition_display"] = str(part_val)
        record["result"]["engines_match"] = match
        lines.append(f"partition engine: {part_val}")
        lines.append(f"engines match: {match}")
    record["engine"] = _engine_meta(args.engine, started)
    _emit(args, record, "\n".join(lines))
    return 0


def _cmd_series(args) -> int:
    started = time.perf_counter()
    spec = gs.SeriesSpec(
        args.from_level,
        args.to_level,
        args.target,
        weighted=args.weighted,
        parity_filter=args.parity,
        x_order=args.x_order,
    )
    series = gs.series_A(spec)
    record: dict = {
        "query": {
            "command": "series",
            "from_level": args.from_level,
            "to_level": args.to_level,
            "target": args.target,
            "weighted": args.weighted,
            "parity": args.parity,
            "x_order": args.x_order,
            "q1": args.q1,
        }
    }
    if args.q1:
        values = [c.at_one() for c in series.coeffs()]
        record["result"] = {
            "display": ",".join(str(v) for v in values),
            "terms": [
                {"x_exp": d, "q_exp": 0, "coeff": str(v)} for d, v in enumerate(values)
            ],
        }
        text = record["result"]["display"]
    else:
        record["result"] = {
            "display": "; ".join(
                f"x^{d}: {c}" for d, c in enumerate(series.coeffs())
            ),
            "terms": _series_terms(series),
        }
        text = "\n".join(f"x^{d}: {c}" for d, c in enumerate(series.coeffs()))
    record["engine"] = _engine_meta("step", started)
    _emit(args, record, text)
    return 0


def _cmd_table(args) -> int:
    started = time.perf_counter()
    table = fe.mult_table(args.from_level, args.to_level, args.s_max)
    rows = [
        (s, n, table.rows[(s, n)])
        for s in range(args.s_max + 1)
        for n in range(s + 1)
        if not table.rows[(s, n)].is_zero()
    ]
    record = {
        "query": {
            "command": "table",
            "from_level": args.from_level,
            "to_level": args.to_level,
            "s_max": args.s_max,
        },
        "result": {
            "display": f"{len(rows)} non-zero entries",
            "terms": [
                {"s": s, "n": n, "multiplicity": str(p), "coeffs": _poly_terms(p)}
                for s, n, p in rows
            ],
        },
        "engine": _engine_meta("step", started),
    }
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["s", "n", "multiplicity"])
        for s, n, p in rows:
            writer.writerow([s, n, str(p)])
        text = buf.getvalue().rstrip("\n")
        stream = open(args.out, "w") if args.out else sys.stdout
        try:
            stream.write(text + "\n")
        finally:
            if args.out:
                stream.close()
        return 0
    text = "\n".join(f"s={s} n={n}: {p}" for s, n, p in rows)
    _emit(args, record, text)
    return 0


def _cmd_char(args) -> int:
    started = time.perf_counter()
    character = ch.graded_character(args.level, args.weight, args.via_level)
    triples = character.sorted_entries()
    record = {
        "query": {
            "command": "char",
            "level": args.level,
            "weight": args.weight,
            "via_level": args.via_level,
        },
        "result": {
            "display": " ".join(f"({j},{p},{v})" for j, p, v in triples),
            "terms": [
                {"weight": j, "grade": p, "multiplicity": v} for j, p, v in triples
            ],
            "total_dimension": character.total_dimension(),
        },
        "engine": _engine_meta("step", started),
    }
    _emit(args, record, record["result"]["display"])
    return 0


def _cmd_dim(args) -> int:
    started = time.perf_counter()
    value = ch.dim_demazure(args.level, args.weight)
    record = {
        "query": {"command": "dim", "level": args.level, "weight": args.weight},
        "result": {"display": str(value), "terms": [], "value": value},
        "engine": _engine_meta("closed", started),
    }
    _emit(args, record, str(value))
    return 0


def _cmd_closed(args) -> int:
    started = time.perf_counter()
    which = args.which
    query = {"command": "closed", "which": which}
    if which == "1to2":
        query.update(s=args.s, p=args.p)
        poly = cf.cf_1to2(args.s, args.p)
        result = {"display": str(poly), "terms": _poly_terms(poly)}
    elif which == "2to3":
        query.update(n=args.n, p=args.p)
        poly = cf.cf_2to3(args.n, args.p)
        result = {"display": str(poly), "terms": _poly_terms(poly)}
    elif which == "carlitz":
        query.update(n=args.n, k=args.index)
        series = cf.carlitz_S(args.n, args.index)
        result = {
            "display": "; ".join(f"x^{d}: {c}" for d, c in enumerate(series.coeffs())),
            "terms": _series_terms(series),
        }
    elif which == "mocktheta":
        query.update(index=args.index, q_order=args.q_order)
        poly = cf.mock_theta(args.index, args.q_order)
        result = {"display": str(poly), "terms": _poly_terms(poly)}
    elif which == "phi12":
        query.update(n=args.n, x_order=args.x_order)
        series = cf.phi_1to2(args.n, args.x_order)
        result = {
            "display": "; ".join(f"x^{d}: {c}" for d, c in enumerate(series.coeffs())),
            "terms": _series_terms(series),
        }
    elif which == "thmgenser1":
        query.update(m=args.m, n=args.n)
        rat = gs.closed_A_1m(args.m, args.n)
        result = {"display": str(rat), "terms": [], "num": str(rat.num), "den": str(rat.den)}
    elif which == "dpoly":
        query.update(m=args.m, n=args.n)
        poly = gs.d_poly(args.m, args.n)
        result = {"display": str(poly), "terms": []}
    else:  # closedA
        query.update(m=args.m, n=args.n)
        rat = gs.closed_A_m_m1(args.m, args.n)
        result = {"display": str(rat), "terms": [], "num": str(rat.num), "den": str(rat.den)}
    record = {"query": query, "result": result, "engine": _engine_meta("closed", started)}
    _emit(args, record, result["display"])
    return 0


def _cmd_verify(args) -> int:
    ok = verify.run_suite(args.suite, args.max)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# parser

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="demflag",
        description="Exact graded multiplicities of Demazure flags and their q-series",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.add_argument("--out", metavar="FILE", default=None)

    p = sub.add_parser("mult", help="one graded multiplicity")
    p.add_argument("--from-level", type=int, required=True, dest="from_level")
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--to-level", type=int, required=True, dest="to_level")
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--engine", choices=("step", "partition", "both"), default="step")
    add_common(p)
    p.set_defaults(fn=_cmd_mult)

    p = sub.add_parser("series", help="a generating series")
    p.add_argument("--from-level", type=int, required=True, dest="from_level")
    p.add_argument("--to-level", type=int, required=True, dest="to_level")
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--x-order", type=int, default=gs.DEFAULT_X_ORDER, dest="x_order")
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--q1", action="store_true", help="numerical (q=1) coefficients")
    p.add_argument("--parity", type=int, choices=(0, 1), default=None)
    add_common(p)
    p.set_defaults(fn=_cmd_series)

    p = sub.add_parser("table", help="a multiplicity table")
    p.add_argument("--from-level", type=int, required=True, dest="from_level")
    p.add_argument("--to-level", type=int, required=True, dest="to_level")
    p.add_argument("--s-max", type=int, required=True, dest="s_max")
    add_common(p)
    p.set_defaults(fn=_cmd_table)

    p = sub.add_parser("char", help="a graded character")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--via-level", type=int, default=None, dest="via_level")
    add_common(p)
    p.set_defaults(fn=_cmd_char)

    p = sub.add_parser("dim", help="dimension of a Demazure module")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--weight", type=int, required=True)
    add_common(p)
    p.set_defaults(fn=_cmd_dim)

    p = sub.add_parser("closed", help="closed-form families")
    p.add_argument(
        "--which",
        required=True,
        choices=(
            "1to2",
            "2to3",
            "carlitz",
            "mocktheta",
            "phi12",
            "thmgenser1",
            "dpoly",
            "closedA",
        ),
    )
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--p", type=int, default=0)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--index", type=int, choices=(0, 1), default=0)
    p.add_argument("--q-order", type=int, default=20, dest="q_order")
    p.add_argument("--x-order", type=int, default=gs.DEFAULT_X_ORDER, dest="x_order")
    add_common(p)
    p.set_defaults(fn=_cmd_closed)

    p = sub.add_parser("verify", help="run the identity suites")
    p.add_argument("--suite", choices=tuple(verify.suite_names()), default="all")
    p.add_argument("--max", type=int, default=None, help="scale every grid bound")
    add_common(p)
    p.set_defaults(fn=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (InvalidLevel, InvalidShape, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
