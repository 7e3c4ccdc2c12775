"""Batch command-line interface.

Every subcommand prints a deterministic, machine-readable report; re-running
a command yields byte-identical output except for elapsed-time fields, which
the MATCHLESS_TEST=1 environment variable zeroes for golden-file testing.

Exit codes: 0 all checks hold / values computed; 1 a certified inequality or
verification failed; 2 usage error or out-of-regime request; 3 resource cap
exceeded.
"""

import argparse
import csv
import io
import json
import os
import sys
import time
from typing import Optional, Sequence

from . import __version__
from .constructions import build_construction, construction_size, parse_construction_spec
from .formulas import (
    OutOfRegimeError,
    check_condition_1,
    check_condition_2,
    check_hm_calc,
    check_low_layers,
    condition3_regime,
    find_valid_t,
    kleitman_value,
    size_P,
    size_P_upto,
    smallest_t,
)
from .matchings import nu
from .oracle import CapExceededError, oracle_e, oracle_ek
from .setfam import FamilyFormatError, layer_at_most, parse_family, serialize_family
from .shifting import ShiftPair, is_shifted, shift_closure, shift_ij

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_CAP = 3

_CHECKS = {
    "lemma33": (("n", "k", "s"), lambda p: check_low_layers(p["n"], p["k"], p["s"])),
    "lemma34": (("m", "s", "l"), lambda p: check_hm_calc(p["m"], p["s"], p["l"])),
    "cond1": (("m", "s", "l", "t"), lambda p: check_condition_1(p["m"], p["s"], p["l"], p["t"])),
    "cond2": (("m", "s", "l", "t"), lambda p: check_condition_2(p["m"], p["s"], p["l"], p["t"])),
    "cond3": (("m", "l", "t", "n"), lambda p: condition3_regime(p["m"], p["l"], p["t"], p["n"])),
}

CSV_COLUMNS = ["check", "point", "status", "lhs", "rhs", "margin", "note"]


def _test_mode() -> bool:
    return os.environ.get("MATCHLESS_TEST") == "1"


def _load_family(path: str):
    with open(path, "r", encoding="ascii") as fh:
        return parse_family(fh.read())


def _parse_assignments(tokens: Sequence[str], names: Sequence[str]) -> dict[str, int]:
    params: dict[str, int] = {}
    for tok in tokens:
        name, eq, value = tok.partition("=")
        if not eq or not value.lstrip("-").isdigit():
            raise ValueError(f"expected name=value, got {tok!r}")
        if name in params:
            raise ValueError(f"duplicate parameter {name!r}")
        params[name] = int(value)
    missing = [n for n in names if n not in params]
    extra = [n for n in params if n not in names]
    if missing or extra:
        raise ValueError(
            f"expected parameters {', '.join(names)};"
            + (f" missing {', '.join(missing)};" if missing else "")
            + (f" unexpected {', '.join(extra)};" if extra else "")
        )
    return params


def _parse_grid(spec: str, names: Sequence[str]) -> list[tuple[str, range]]:
    axes: dict[str, range] = {}
    for tok in spec.split():
        name, eq, value = tok.partition("=")
        if not eq:
            raise ValueError(f"bad grid token {tok!r}")
        if name in axes:
            raise ValueError(f"duplicate grid axis {name!r}")
        if ".." in value:
            lo, _, hi = value.partition("..")
            if not (lo.lstrip("-").isdigit() and hi.lstrip("-").isdigit()):
                raise ValueError(f"bad grid range {tok!r}")
            axes[name] = range(int(lo), int(hi) + 1)
        elif value.lstrip("-").isdigit():
            v = int(value)
            axes[name] = range(v, v + 1)
        else:
            raise ValueError(f"bad grid token {tok!r}")
    missing = [n for n in names if n not in axes]
    extra = [n for n in axes if n not in names]
    if missing or extra:
        raise ValueError(
            f"grid must cover parameters {', '.join(names)}; got {', '.join(axes)}"
        )
    # Points are visited in the order the axes appear in the grid spec.
    return list(axes.items())


def _grid_points(axes: list[tuple[str, range]]):
    def recur(i: int, acc: dict[str, int]):
        if i == len(axes):
            yield dict(acc)
            return
        name, rng = axes[i]
        for v in rng:
            acc[name] = v
            yield from recur(i + 1, acc)

    yield from recur(0, {})


def _cmd_construct(args) -> int:
    spec = parse_construction_spec(" ".join(args.spec))
    text = serialize_family(build_construction(spec))
    if args.output:
        with open(args.output, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_size(args) -> int:
    spec = parse_construction_spec(" ".join(args.spec))
    print(construction_size(spec))
    return EXIT_OK


def _cmd_nu(args) -> int:
    fam = _load_family(args.family)
    value, witness = nu(fam)
    print(f"nu={value}")
    sys.stdout.write(serialize_family(witness.to_family(fam.n)))
    return EXIT_OK


def _cmd_shift(args) -> int:
    fam = _load_family(args.family)
    if args.check:
        print(f"shifted={'true' if is_shifted(fam) else 'false'}")
        return EXIT_OK
    if args.pair:
        i, j = args.pair
        out = shift_ij(fam, ShiftPair(i, j))
    else:
        out = shift_closure(fam)
    sys.stdout.write(serialize_family(out))
    return EXIT_OK


def _cmd_kleitman(args) -> int:
    print(kleitman_value(args.n, args.s))
    return EXIT_OK


def _cmd_check(args) -> int:
    names, fn = _CHECKS[args.name]
    params = _parse_assignments(args.params, names)
    try:
        verdict = fn(params)
    except OutOfRegimeError as exc:
        print(f"OUT OF REGIME: {exc}")
        return EXIT_USAGE
    print(json.dumps(verdict.to_dict()))
    return EXIT_OK if verdict.holds else EXIT_FAILED


def _cmd_smallest_t(args) -> int:
    print(smallest_t(args.m))
    return EXIT_OK


def _cmd_find_t(args) -> int:
    t = find_valid_t(args.m, args.s, args.l)
    print("none" if t is None else t)
    return EXIT_OK


def _write_witness(result, path: Optional[str]) -> Optional[str]:
    if path is None:
        return None
    with open(path, "w", encoding="ascii") as fh:
        fh.write(serialize_family(result.witness))
    return path


def _cmd_oracle(args) -> int:
    if args.mode == "e":
        result = oracle_e(args.n, args.s, shifted_only=args.shifted)
    else:
        result = oracle_ek(args.n, args.k, args.s)
    wfile = _write_witness(result, args.witness)
    print(json.dumps(result.to_dict(witness_file=wfile, zero_elapsed=_test_mode())))
    return EXIT_OK


def _cmd_verify(args) -> int:
    m, s, l = args.m, args.s, args.l
    fam = build_construction(parse_construction_spec(f"P m={m} s={s} l={l}"))
    n = fam.n
    size = len(fam)
    assert size == size_P(m, s, l)
    print(f"P(m={m},s={s},l={l}): n={n} |P|={size}")
    value, _ = nu(fam)
    nu_ok = value < s
    print(f"nu(P)={value} {'<' if nu_ok else '>='} s={s}: {'OK' if nu_ok else 'FAILED'}")
    code = EXIT_OK if nu_ok else EXIT_FAILED
    try:
        result = oracle_e(n, s)
    except CapExceededError as exc:
        print(f"oracle: SKIPPED ({exc})")
        return code
    print(f"oracle e({n},{s}) = {result.value}")
    equal = result.value == size
    print(f"verdict {'EQUAL' if equal else 'DIFFER'}")
    if not equal:
        code = EXIT_FAILED
    wcount = len(layer_at_most(result.witness, m + 1))
    pcount = size_P_upto(m, s, l, m + 1)
    strong_ok = wcount <= pcount
    print(
        f"strong form: |witness^(<={m + 1})|={wcount} "
        f"{'<=' if strong_ok else '>'} |P^(<={m + 1})|={pcount}: "
        f"{'OK' if strong_ok else 'FAILED'}"
    )
    if not strong_ok:
        code = EXIT_FAILED
    return code


def _cmd_report(args) -> int:
    t0 = time.perf_counter()
    names, fn = _CHECKS[args.name]
    axes = _parse_grid(args.grid, names)
    points = []
    holds = fails = skipped = 0
    for point in _grid_points(axes):
        row: dict = {"point": point}
        try:
            verdict = fn(point)
        except (OutOfRegimeError, ValueError) as exc:
            row["status"] = "SKIPPED"
            row["reason"] = str(exc)
            skipped += 1
        else:
            row["status"] = "HOLDS" if verdict.holds else "FAILS"
            row.update(
                (k, v)
                for k, v in verdict.to_dict().items()
                if k in ("lhs", "rhs", "margin", "regime_note")
            )
            if verdict.holds:
                holds += 1
            else:
                fails += 1
        points.append(row)
    elapsed_ms = 0 if _test_mode() else int((time.perf_counter() - t0) * 1000)
    report = {
        "command": "report " + args.name + " --grid " + args.grid,
        "check": args.name,
        "grid": args.grid,
        "points": points,
        "summary": {
            "holds": holds,
            "fails": fails,
            "skipped": skipped,
            "total": len(points),
        },
        "version": f"matchless {__version__}",
        "elapsed_ms": elapsed_ms,
    }
    fmt = args.format
    if fmt is None:
        fmt = "csv" if args.out and args.out.endswith(".csv") else "json"
    if fmt == "json":
        payload = json.dumps(report, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in points:
            point = " ".join(f"{k}={v}" for k, v in row["point"].items())
            writer.writerow(
                [
                    args.name,
                    point,
                    row["status"],
                    row.get("lhs", ""),
                    row.get("rhs", ""),
                    row.get("margin", ""),
                    row.get("regime_note") or row.get("reason", "") or "",
                ]
            )
        payload = buf.getvalue()
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return EXIT_OK if fails == 0 else EXIT_FAILED


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matchless",
        description="Families of sets with bounded matching number: "
        "constructions, solvers, and exact certification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a named family as FAMILY v1 text")
    p.add_argument("spec", nargs="+", help='e.g. P m=1 s=4 l=2  |  A n=6 k=2 s=3 i=1')
    p.add_argument("-o", "--output", help="write to file instead of stdout")
    p.set_defaults(fn=_cmd_construct)

    p = sub.add_parser("size", help="closed-form size of a named family")
    p.add_argument("spec", nargs="+")
    p.set_defaults(fn=_cmd_size)

    p = sub.add_parser("nu", help="exact matching number of a family file")
    p.add_argument("family")
    p.set_defaults(fn=_cmd_nu)

    p = sub.add_parser("shift", help="compression operations on a family file")
    p.add_argument("family")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--closure", action="store_true", help="full shift closure")
    g.add_argument("--pair", nargs=2, type=int, metavar=("I", "J"))
    g.add_argument("--check", action="store_true", help="test shiftedness")
    p.set_defaults(fn=_cmd_shift)

    p = sub.add_parser("kleitman", help="solved maximum family size at n mod s in {0, s-1}")
    p.add_argument("n", type=int)
    p.add_argument("s", type=int)
    p.set_defaults(fn=_cmd_kleitman)

    p = sub.add_parser("check", help="certify one inequality exactly")
    p.add_argument("name", choices=sorted(_CHECKS))
    p.add_argument("params", nargs="+", help="name=value assignments")
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("smallest-t", help="least shift t from the exact rational rule")
    p.add_argument("m", type=int)
    p.set_defaults(fn=_cmd_smallest_t)

    p = sub.add_parser("find-t", help="least t passing both conditions and the regime")
    p.add_argument("m", type=int)
    p.add_argument("s", type=int)
    p.add_argument("l", type=int)
    p.set_defaults(fn=_cmd_find_t)

    p = sub.add_parser("oracle", help="exact brute-force maxima on tiny instances")
    osub = p.add_subparsers(dest="mode", required=True)
    pe = osub.add_parser("e", help="maximum family on [n] with no s-matching")
    pe.add_argument("n", type=int)
    pe.add_argument("s", type=int)
    pe.add_argument("--shifted", action="store_true", help="search shifted families only")
    pe.add_argument("--witness", help="write the witness family to this file")
    pe.set_defaults(fn=_cmd_oracle)
    pk = osub.add_parser("ek", help="maximum k-uniform family with no s-matching")
    pk.add_argument("n", type=int)
    pk.add_argument("k", type=int)
    pk.add_argument("s", type=int)
    pk.add_argument("--witness", help="write the witness family to this file")
    pk.set_defaults(fn=_cmd_oracle)

    p = sub.add_parser("verify", help="verify a conjectured extremal instance")
    p.add_argument("what", choices=["conjecture"])
    p.add_argument("m", type=int)
    p.add_argument("s", type=int)
    p.add_argument("l", type=int)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("report", help="evaluate a check over a parameter grid")
    p.add_argument("name", choices=sorted(_CHECKS))
    p.add_argument("--grid", required=True, help='e.g. "k=1..6 s=3..50 n=5..30"')
    p.add_argument("--out", help="output file (.json or .csv)")
    p.add_argument("--format", choices=["json", "csv"])
    p.set_defaults(fn=_cmd_report)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point returning an exit code instead of raising SystemExit."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except FamilyFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
