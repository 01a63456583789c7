"""Command-line surface: branching tables, verification suites, data checks.

Exit codes: 0 success, 1 failed verification, 2 invalid parameters,
3 I/O failure, 4 schema or structural-invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import verify as verify_mod
from .branching import (InvalidParamsError, KTypeTable, ktype_table,
                        validate_params)
from .groups import GroupDataError, builtin_group_names, data_dir, load_group_data
from .oscillator import GridSpec
from .presets import ParamSchemaError, resolve_params

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID_PARAMS = 2
EXIT_IO = 3
EXIT_SCHEMA = 4


def _load_group(spec: str):
    path = Path(spec)
    if path.suffix == ".json" or path.exists():
        return load_group_data(path)
    builtin = data_dir() / f"{spec}.json"
    if builtin.exists():
        return load_group_data(builtin)
    raise FileNotFoundError(
        f"group {spec!r} is neither a file nor a builtin "
        f"(builtins: {builtin_group_names()})")


def _table_payload(group: str, params_doc: dict, table: KTypeTable) -> dict:
    return {
        "group": group,
        "params": params_doc,
        "window": table.window,
        "sign": table.sign,
        "mode": "partition",
        "table": [{"ktype": list(k), "multiplicity": m}
                  for k, m in table.rows()],
    }


def _format_csv(payload: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(["ktype_highest_weight", "multiplicity", "group", "window",
                "sign", "mode", "params"])
    meta = [payload["group"], payload["window"], payload["sign"],
            payload["mode"], json.dumps(payload["params"], sort_keys=True,
                                        separators=(",", ":"))]
    for row in payload["table"]:
        w.writerow([" ".join(str(c) for c in row["ktype"]),
                    row["multiplicity"], *meta])
    return buf.getvalue()


def _write_out(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def cmd_table(args) -> int:
    try:
        g = _load_group(args.group)
    except (FileNotFoundError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    except GroupDataError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SCHEMA

    try:
        doc = json.loads(args.params)
    except json.JSONDecodeError as e:
        print(f"error: params document is not JSON: {e}", file=sys.stderr)
        return EXIT_INVALID_PARAMS
    try:
        params = resolve_params(g, doc)
    except ParamSchemaError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID_PARAMS

    verdict = validate_params(g, params)
    if verdict.verdict != "nonzero":
        print(f"verdict: {verdict}", file=sys.stderr)
        return EXIT_INVALID_PARAMS

    table = ktype_table(g, params, args.window)
    payload = _table_payload(g.name, doc, table)
    if args.format == "json":
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        text = _format_csv(payload)
    try:
        _write_out(text, args.out)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_verify(args) -> int:
    kwargs = {}
    if args.suite == "dirac":
        kwargs["grid"] = GridSpec(args.grid_L, args.grid_h)
        kwargs["svd_tol"] = args.svd_tol
    report = verify_mod.run_suite(args.suite, **kwargs)
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    try:
        _write_out(text, args.out)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK if report["pass"] else EXIT_VERIFY_FAILED


def cmd_validate(args) -> int:
    path = Path(args.path)
    try:
        g = load_group_data(path)
    except (FileNotFoundError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    except GroupDataError as e:
        print(f"invalid: {e.invariant}: {e}", file=sys.stderr)
        return EXIT_SCHEMA
    for inv in g.checklist:
        print(f"ok: {inv}")
    print(f"valid: {g.name}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="kbranch",
        description="Branching tables for standard representations, with "
                    "verification suites")
    sub = ap.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", help="compute a K-type multiplicity table")
    t.add_argument("--group", required=True,
                   help="builtin name (sl2r-compact, sl2r-split, su21) or a "
                        "group-data file path")
    t.add_argument("--params", required=True,
                   help="JSON parameter document (friendly or raw)")
    t.add_argument("--window", type=int, default=10,
                   help="max-coordinate norm of enumerated K-types")
    t.add_argument("--format", choices=("csv", "json"), default="csv")
    t.add_argument("--out", help="output path (default stdout)")
    t.set_defaults(func=cmd_table)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=sorted(verify_mod.SUITES))
    v.add_argument("--grid-L", type=float, default=8.0)
    v.add_argument("--grid-h", type=float, default=0.05)
    v.add_argument("--svd-tol", type=float, default=1e-6)
    v.add_argument("--out", help="output path (default stdout)")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("validate", help="validate a group-data file")
    c.add_argument("path")
    c.set_defaults(func=cmd_validate)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidParamsError as e:
        print(f"verdict: {e.verdict}", file=sys.stderr)
        return EXIT_INVALID_PARAMS
    except GroupDataError as e:
        print(f"invalid: {e}", file=sys.stderr)
        return EXIT_SCHEMA


if __name__ == "__main__":
    sys.exit(main())
