"""Command-line entry point: ``prymcert <subcommand> ...``.

Exit codes: 0 success, 1 input or validation error, 2 when ``certify`` ran
but the verdict is not ``obstructed``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Any, Sequence

from .arith import parse_character
from .certify import OBSTRUCTED, certify_family
from .cover import (
    CoveringMatrix,
    IntegralityError,
    InvalidCoveringError,
    eigenform_basis,
    eigenspace_table,
    genus_cover,
    group_order,
    ramification_order,
    require_full_span,
    validate,
)
from .enumeration import CSV_COLUMNS, rows_to_csv, scan
from .higgs import galois_orbits, rank_profile
from .prym import PrymDatum, check_prym_datum, default_sigma, prym_profile
from .arith import Character

EXIT_OK, EXIT_INPUT, EXIT_VERDICT = 0, 1, 2


class CliError(Exception):
    pass


def _load(path: str) -> tuple[CoveringMatrix, dict]:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"unreadable file {path!r}: {exc.strerror}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"malformed JSON in {path!r}: {exc}")
    if not isinstance(data, dict):
        raise CliError(f"{path!r}: top-level JSON value must be an object")
    return CoveringMatrix.from_dict(data), data


def _parse_ints(text: str, what: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise CliError(f"{what} must be comma-separated integers, got {text!r}")


def _require_valid(M: CoveringMatrix) -> None:
    report = validate(M)
    if not report.valid:
        raise CliError("invalid covering matrix: " + "; ".join(report.messages))


def _dumps(payload: Any) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _csv(rows: list[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(c)) for c in columns])
    return buf.getvalue()


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return ";".join(map(str, value))
    return "" if value is None else str(value)


def _md(rows: list[dict], columns: Sequence[str], title: str | None = None) -> str:
    lines = [f"## {title}", ""] if title else []
    lines.append("| " + " | ".join(columns) + " |")
    lines.append("|" + "---|" * len(columns))
    for row in rows:
        lines.append("| " + " | ".join(_cell(row.get(c)) for c in columns) + " |")
    return "\n".join(lines) + "\n"


def _emit(fmt: str, payload: Any, rows: list[dict], columns: Sequence[str], title: str) -> str:
    if fmt == "json":
        return _dumps(payload)
    if fmt == "csv":
        return _csv(rows, columns)
    return _md(rows, columns, title)


def _datum(M: CoveringMatrix, data: dict | None = None) -> PrymDatum:
    sigma = None
    if data:
        sigma = data.get("sigma", (data.get("family") or {}).get("sigma"))
    if sigma is None:
        return PrymDatum(M, default_sigma(M.moduli))
    return PrymDatum(M, Character(tuple(sigma), M.moduli))


def cmd_analyze(args) -> tuple[str, int]:
    M, data = _load(args.input)
    report = validate(M)
    payload: dict[str, Any] = M.to_dict()
    payload["validation"] = report.to_dict()
    code = EXIT_OK
    if report.valid:
        payload["group_order"] = group_order(M)
        payload["ramification_orders"] = [ramification_order(M, j) for j in range(M.s)]
        payload["genus"] = genus_cover(M)
        if M.moduli[0] % 2 == 0:
            D = _datum(M, data)
            payload["sigma"] = list(D.sigma.components)
            payload["double_cover"] = check_prym_datum(D).to_dict()
            if report.group_is_full_product and D.has_default_sigma:
                payload["prym"] = prym_profile(D).to_dict()
    else:
        code = EXIT_INPUT

    flat = {
        "moduli": M.moduli,
        "s": M.s,
        "valid": report.valid,
        "totally_ramified": report.totally_ramified,
        "group_is_full_product": report.group_is_full_product,
        "messages": report.messages,
        "group_order": payload.get("group_order"),
        "genus": payload.get("genus"),
    }
    for key, value in payload.get("double_cover", {}).items():
        flat[key] = value
    for key, value in payload.get("prym", {}).items():
        flat[key] = value
    rows = [{"field": k, "value": v} for k, v in flat.items()]
    out = _emit(args.format, payload, rows, ("field", "value"), "Cover analysis")
    if code:
        sys.stderr.write("invalid covering matrix: " + "; ".join(report.messages) + "\n")
    return out, code


def cmd_dims(args) -> tuple[str, int]:
    M, _ = _load(args.input)
    _require_valid(M)
    table = eigenspace_table(M)
    rows = [{"character": list(chi.components), "dim": d} for chi, d in table.items()]
    payload = {"moduli": list(M.moduli), "dims": rows, "total": table.total(), "genus": genus_cover(M)}
    return _emit(args.format, payload, rows, ("character", "dim"), "Eigenspace dimensions"), EXIT_OK


def cmd_basis(args) -> tuple[str, int]:
    M, _ = _load(args.input)
    _require_valid(M)
    chi = parse_character(args.char, M.moduli)
    basis = eigenform_basis(M, chi)
    rows = [dict(b.to_dict(), form=b.formula()) for b in basis]
    payload = {"character": list(chi.components), "dimension": len(basis), "basis": rows}
    return _emit(args.format, payload, rows, ("nu", "floor_exponents", "form"), f"Eigenforms for ({chi})"), EXIT_OK


def cmd_certify(args) -> tuple[str, int]:
    if args.input:
        M, data = _load(args.input)
        _require_valid(M)
        D = _datum(M, data)
    else:
        if args.p is None or args.m is None or args.counts is None:
            raise CliError("certify needs either --input or all of --p, --m, --counts")
        counts = _parse_ints(args.counts, "--counts")
        if len(counts) != args.m:
            raise CliError(f"--counts has {len(counts)} entries but --m is {args.m}")
        if args.p < 2:
            raise CliError(f"--p must be at least 2, got {args.p}")
        moduli = (2 * args.p,) + (args.p,) * (args.m - 1)
        M = CoveringMatrix.from_counts(moduli, counts)
        _require_valid(M)
        D = PrymDatum.with_default_sigma(M)
    cert = certify_family(D)
    payload = cert.to_dict()
    rows = [
        {"id": st["id"], "passed": st["passed"], "computed": st["computed"], "statement": st["statement"]}
        for st in payload["steps"]
    ]
    rows.append({"id": "verdict", "passed": cert.verdict})
    out = _emit(args.format, payload, rows, ("id", "passed", "computed", "statement"), "Obstruction certificate")
    return out, EXIT_OK if cert.verdict == OBSTRUCTED else EXIT_VERDICT


def cmd_enumerate(args) -> tuple[str, int]:
    rows = scan(args.p, args.m, args.max_s)
    if args.format == "csv":
        return rows_to_csv(rows), EXIT_OK
    dicts = [r.to_dict() for r in rows]
    return _emit(args.format, dicts, dicts, CSV_COLUMNS, f"Families p={args.p}, m={args.m}"), EXIT_OK


def cmd_orbits(args) -> tuple[str, int]:
    M, data = _load(args.input)
    _require_valid(M)
    D = _datum(M, data)
    orbits = galois_orbits(D)
    ranks = None
    try:
        require_full_span(M)
        ranks = rank_profile(D)
    except InvalidCoveringError:
        pass
    rows = []
    for orbit in orbits.orbits:
        row: dict[str, Any] = {"characters": [str(c) for c in orbit], "size": len(orbit)}
        if ranks is not None:
            row["e10_plus_e01"] = [ranks.e10(c) + ranks.e01(c) for c in orbit]
        rows.append(row)
    payload = {"moduli": list(M.moduli), "unit_count": orbits.unit_count, "orbits": rows}
    return _emit(args.format, payload, rows, ("characters", "size", "e10_plus_e01"), "Galois orbits"), EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prymcert", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "md", "csv"), default="json")
    common.add_argument("--seed", help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("analyze", parents=[common], help="validation report, genus and Prym profile")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("dims", parents=[common], help="full eigenspace dimension table")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("basis", parents=[common], help="eigenform basis for one character")
    p.add_argument("--input", required=True)
    p.add_argument("--char", required=True, help="comma-separated components, e.g. 1,0")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("certify", parents=[common], help="obstruction certificate")
    p.add_argument("--input")
    p.add_argument("--p", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--counts", help="column multiplicities per row, e.g. 10,5")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("enumerate", parents=[common], help="scan all totally ramified families")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--max-s", dest="max_s", type=int, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("orbits", parents=[common], help="Galois orbits of odd characters")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_orbits)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.seed is not None:
        sys.stderr.write("error: --seed is reserved and not accepted; every computation is deterministic\n")
        return EXIT_INPUT
    try:
        out, code = args.func(args)
    except (CliError, InvalidCoveringError, IntegralityError, ValueError, TypeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
