"""Command line front end.

    qfrob check r2
    qfrob check my_r.json --mode algebra --n 3 --out report.json
    qfrob table characters --n 3
    qfrob table power-sums --family 1,1 --up-to 3
    qfrob birank glN:3 --figure dims.png
    qfrob export r11 --out r11.json

Exit codes: 0 success, 1 verification failure, 2 input or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .exactla import Matrix
from .hecke import Partition, character_table, partitions
from .hsym import BraidViolation, HeckeSymmetry, HeckeViolation, Inconclusive, birank, builtin, validate
from .qscalar import ParseError, parse_scalar
from . import spectral as sp
from .verify import SuiteConfig, full_suite

REPORT_SCHEMA = "qfrob-report/1"
SYMMETRY_SCHEMA = "qfrob-symmetry/1"

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    """Bad command line input; maps to exit code 2."""


# -- symmetry files -----------------------------------------------------------


def read_symmetry_file(path: str | Path) -> tuple[Matrix, int, str]:
    """Parse a symmetry file into (R, N, name) without validating R."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict) or "n" not in doc or "entries" not in doc:
        raise InputError(f"{path}: expected an object with fields 'n' and 'entries'")
    n = doc["n"]
    if not isinstance(n, int) or n < 1:
        raise InputError(f"{path}: 'n' must be a positive integer")
    entries = doc["entries"]
    size = n * n
    if not isinstance(entries, list) or len(entries) != size or any(
            not isinstance(row, list) or len(row) != size for row in entries):
        raise InputError(f"{path}: 'entries' must be a {size}x{size} array for n = {n}")
    rows = []
    for i, row in enumerate(entries):
        parsed = []
        for j, text in enumerate(row):
            try:
                parsed.append(parse_scalar(str(text)))
            except ParseError as exc:
                raise InputError(f"{path}: entry [{i}][{j}]: {exc}") from None
        rows.append(parsed)
    name = doc.get("name") or path.stem
    return Matrix(rows, shape=(n, n)), n, str(name)


def symmetry_document(s: HeckeSymmetry) -> dict:
    return {
        "schema": SYMMETRY_SCHEMA,
        "n": s.N,
        "name": s.name,
        "entries": [[str(x) for x in row] for row in s.R.rows],
    }


def resolve(spec: str):
    """A validated HeckeSymmetry for a builtin name, or an unvalidated (R, N, name) from a file."""
    if Path(spec).suffix == ".json" or Path(spec).exists():
        return read_symmetry_file(spec)
    try:
        return builtin(spec)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _validated(subject) -> HeckeSymmetry:
    if isinstance(subject, HeckeSymmetry):
        return subject
    r, n, name = subject
    return validate(r, n, name)


def _parse_family(text: str) -> tuple[int, int]:
    try:
        m, n = (int(x) for x in text.split(","))
        sp.SpectralFamily(m, n)
    except ValueError:
        raise InputError(f"--family expects 'm,n' with m, n >= 0 and m + n >= 1, got {text!r}") from None
    return m, n


def _write_json(path: str, doc: dict) -> None:
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=False) + "\n")


# -- commands -----------------------------------------------------------------


def cmd_check(args) -> int:
    subject = resolve(args.input)
    family = _parse_family(args.family) if args.family else None
    config = SuiteConfig(n=args.n, k=args.k, kmax=args.kmax, mode=args.mode,
                         fast_rank=args.fast_rank, family=family)
    report = full_suite(subject, config)
    for c in report.checks:
        params = ", ".join(f"{k}={v}" for k, v in c.params.items())
        line = f"{c.status.upper()}\t{c.id}\t{params}"
        if c.status == "fail":
            line += f"\twitness: {json.dumps(c.witness, default=str)}"
        elif c.status == "skip":
            line += f"\treason: {c.reason}"
        print(line)
    summ = report.summary()
    print(f"# {report.subject}: {summ['pass']} passed, {summ['fail']} failed, {summ['skip']} skipped")
    if args.out:
        doc = {"schema": REPORT_SCHEMA, **report.to_dict(timing=True)}
        _write_json(args.out, doc)
    if args.figure:
        from .figures import check_timings

        check_timings(report, args.figure)
    return EXIT_OK if report.passed else EXIT_FAIL


def _characters_rows(n: int):
    parts, _, table = character_table(n)
    header = ["nu\\lambda"] + [str(lam) for lam in parts]
    rows = [[str(nu)] + [str(x) for x in row] for nu, row in zip(parts, table)]
    return header, rows


def _factor_by_p1(f: sp.SpectralFamily, p: sp.MultiPoly, p1: sp.MultiPoly) -> str | None:
    if not f.n or not p or not p1:
        return None
    try:
        quot = sp.RatExpr(p, p1).to_poly()
    except sp.NonPolynomialResult:
        return None
    if quot.total_degree() == 0:
        return None
    return f"({quot})*p1"


def cmd_table(args) -> int:
    if args.kind == "characters":
        if args.n is None or not 1 <= args.n <= 5:
            raise InputError("table characters needs --n between 1 and 5")
        header, rows = _characters_rows(args.n)
        doc = {"kind": "characters", "n": args.n, "rows": [dict(zip(header, r)) for r in rows]}
    else:
        if not args.family:
            raise InputError(f"table {args.kind} needs --family m,n")
        m, n = _parse_family(args.family)
        if not 1 <= args.up_to <= 5:
            raise InputError("--up-to must be between 1 and 5")
        f = sp.SpectralFamily(m, n)
        header = ["name", "value", "factored"]
        rows = []
        p1 = sp.power_sum_spectral(f, 1)
        if args.kind == "power-sums":
            for k in range(1, args.up_to + 1):
                p = sp.power_sum_spectral(f, k)
                rows.append([f"p_{k}", str(p), (_factor_by_p1(f, p, p1) if k > 1 else None) or ""])
        else:
            for lam in partitions(args.up_to):
                s = sp.schur_spectral(f, lam)
                rows.append([f"s_{lam}", str(s), _factor_by_p1(f, s, p1) or ""])
        doc = {"kind": args.kind, "family": str(f), "rows": [dict(zip(header, r)) for r in rows]}
    print("\t".join(header))
    for r in rows:
        print("\t".join(r))
    if args.out:
        _write_json(args.out, {"schema": REPORT_SCHEMA, **doc})
    return EXIT_OK


def cmd_birank(args) -> int:
    subject = resolve(args.input)
    try:
        s = _validated(subject)
    except (BraidViolation, HeckeViolation) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    try:
        br = birank(s, kmax=args.kmax, fast=args.fast_rank)
    except Inconclusive as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_FAIL
    mode = "probabilistic" if br.probabilistic else "exact"
    print(f"dimensions\t{','.join(str(d) for d in br.hp_coefficients)}")
    print(f"series\t{br.series_text()}")
    print(f"birank\t{br}")
    print(f"mode\t{mode}")
    print(f"{br}, series {br.series_text()}")
    if args.out:
        _write_json(args.out, {"schema": REPORT_SCHEMA, "subject": s.name, "birank": str(br),
                               "dimensions": list(br.hp_coefficients), "series": br.series_text(),
                               "mode": mode})
    if args.figure:
        from .figures import birank_sequence

        birank_sequence(s.name, br, args.figure)
    return EXIT_OK


def cmd_export(args) -> int:
    subject = resolve(args.input)
    s = _validated(subject)
    doc = symmetry_document(s)
    if args.out:
        _write_json(args.out, doc)
    else:
        print(json.dumps(doc, indent=2))
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qfrob", description="Exact q-Frobenius checks for RE algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="run the verification suite on a symmetry")
    c.add_argument("input", help="builtin name (r2, r11, glN:<N>, glMN:<m>,<n>) or symmetry file")
    c.add_argument("--n", type=int, default=3, help="largest degree for Frobenius checks")
    c.add_argument("--k", type=int, default=3, help="largest tensor power for representations")
    c.add_argument("--kmax", type=int, default=6)
    c.add_argument("--mode", choices=["algebra", "rep", "spectral", "all"], default="all")
    c.add_argument("--family", help="spectral family m,n (default: the detected bi-rank)")
    c.add_argument("--fast-rank", action="store_true", help="probabilistic bi-rank by specialization")
    c.add_argument("--out", help="write a JSON report")
    c.add_argument("--figure", help="write a PNG chart of check timings")
    c.set_defaults(func=cmd_check)

    t = sub.add_parser("table", help="print characters, Schur functions or power sums")
    t.add_argument("kind", choices=["characters", "schur", "power-sums"])
    t.add_argument("--n", type=int)
    t.add_argument("--family")
    t.add_argument("--up-to", type=int, default=3)
    t.add_argument("--out")
    t.set_defaults(func=cmd_table)

    b = sub.add_parser("birank", help="detect the bi-rank of a symmetry")
    b.add_argument("input")
    b.add_argument("--kmax", type=int, default=6)
    b.add_argument("--fast-rank", action="store_true")
    b.add_argument("--out")
    b.add_argument("--figure", help="write a PNG plot of the dimension sequence")
    b.set_defaults(func=cmd_birank)

    e = sub.add_parser("export", help="write a symmetry file")
    e.add_argument("input")
    e.add_argument("--out")
    e.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (BraidViolation, HeckeViolation) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
