"""Command line: ``exactlie {validate,decompose,admissible,verify,build} ...``.

Exit status: 0 when every check passes, 1 when a check fails, 2 on input
errors (unreadable or malformed files, bad flags, unusable toral data).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import admissible as adm
from . import root_systems as rsys
from .classical import build_classical
from .errors import LieError, Violation
from .io import AlgebraFile, ParseError, Record, Report, digest, dump_json, dump_text, parse_algebra, to_file
from .lie_core import find_jacobi_violation
from .suites import SUITES, Context, SuiteInputError, run_suites, violation_record
from .toral import ToralSubalgebra, weight_decomposition

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _load(path: str) -> tuple[AlgebraFile, dict]:
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError:
        raise InputError(f"{path}: not UTF-8 text") from None
    try:
        f = parse_algebra(text)
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from None
    return f, {"file": Path(path).name, "digest": digest(raw)}


def _algebra(f: AlgebraFile, path: str):
    try:
        return f.algebra()
    except (ValueError, LieError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _toral(f: AlgebraFile, L, path: str) -> ToralSubalgebra:
    if not f.toral:
        raise InputError(f"{path}: no toral records")
    return ToralSubalgebra(L, f.toral)


def cmd_validate(path: str) -> Report:
    f, meta = _load(path)
    L = _algebra(f, path)
    triple = find_jacobi_violation(L)
    if triple is None:
        rec = Record("jacobi", True, {"dim": L.dim, "nonzero_brackets": len(L.structure)})
    else:
        i, j, k = triple
        rec = Record(
            "jacobi",
            False,
            {"dim": L.dim},
            [{"check": "jacobi", "message": "Jacobi identity fails on a basis triple", "triple": [i, j, k], "labels": [L.labels[i], L.labels[j], L.labels[k]]}],
        )
    return Report("validate", meta, [rec])


def _decomposition(path: str):
    f, meta = _load(path)
    L = _algebra(f, path)
    if find_jacobi_violation(L) is not None:
        raise InputError(f"{path}: structure constants fail the Jacobi identity (run validate)")
    return L, _toral(f, L, path), meta


def cmd_decompose(path: str) -> Report:
    L, T, meta = _decomposition(path)
    d = weight_decomposition(L, T)
    weights = [{"weight": w, "dim": s.dim} for w, s in sorted(d.spaces.items()) if any(w)]
    summary = {"roots": len(d.roots), "weights": weights, "zero_space_dim": d.zero_space.dim, "toral_dim": T.dim}
    return Report("decompose", meta, [Record("decompose", True, summary)])


def cmd_admissible(path: str, seed: int, samples: int) -> Report:
    import random

    L, T, meta = _decomposition(path)
    meta = {**meta, "seed": seed, "samples": samples}
    d = weight_decomposition(L, T)
    verdict = adm.is_admissible(d, samples, random.Random(seed))
    if isinstance(verdict, Violation):
        return Report("admissible", meta, [Record("admissible", False, {"roots": len(d.roots)}, [violation_record(verdict)])])
    rd = verdict
    summary = {
        "roots": list(rd.roots),
        "splitting_elements": [{"root": a, "h": rd.splitting_elements[a], "coroot": rd.coroot(a)} for a in rd.roots],
        "integrable": [{"root": a, "integrable": rd.integrable[a]} for a in rd.roots],
        "pairings": [[rd.pairing(b, a) for b in rd.roots] for a in rd.roots],
        "components": len(adm.root_components(rd)),
    }
    return Report("admissible", meta, [Record("admissible", True, summary)])


def cmd_verify(path: str | None, family: str | None, n: int | None, suites: list[str], seed: int, samples: int) -> Report:
    if path is not None:
        L, T, meta = _decomposition(path)
        ctx = Context(algebra=L, toral=T, seed=seed, samples=samples)
    else:
        try:
            system = rsys.family_truncation(family, n)
        except LieError as exc:
            raise InputError(str(exc)) from None
        meta = {"family": family, "n": n}
        ctx = Context(system=system, family=(family, n), seed=seed, samples=samples)
    meta = {**meta, "seed": seed, "samples": samples}
    try:
        records = run_suites(ctx, suites)
    except SuiteInputError as exc:
        raise InputError(str(exc)) from None
    return Report("verify", meta, records)


def cmd_build(family: str, n: int, out: str | None, fmt: str) -> str:
    try:
        L, T = build_classical(family, n)
    except LieError as exc:
        raise InputError(str(exc)) from None
    f = to_file(L, T.basis)
    return dump_json(f) if fmt == "json" else dump_text(f)


def _print_human(report: Report, stream) -> None:
    print(f"{report.command}: {report.verdict}", file=stream)
    for rec in report.records:
        flag = "PASS" if rec.ok else "FAIL"
        brief = {k: v for k, v in rec.as_json()["summary"].items() if not isinstance(v, list) or len(v) <= 12}
        print(f"  [{flag}] {rec.name} {json.dumps(brief, sort_keys=True)}", file=stream)
        for w in rec.as_json()["witnesses"][:5]:
            print(f"         witness: {json.dumps(w, sort_keys=True)}", file=stream)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="exactlie", description="Exact rational checks for Lie algebras and root systems.")
    sub = p.add_subparsers(dest="command", required=True)

    def add_report_flags(sp):
        sp.add_argument("--json", metavar="OUT", help="write the machine-readable report to OUT ('-' for stdout)")
        sp.add_argument("--timing", action="store_true", help="include wall-clock timing in the JSON report")

    sp = sub.add_parser("validate", help="check the Jacobi identity on a structure-constant file")
    sp.add_argument("file")
    add_report_flags(sp)

    sp = sub.add_parser("decompose", help="weight space decomposition for the toral records")
    sp.add_argument("file")
    add_report_flags(sp)

    for name, text in (("admissible", "admissibility check with splitting elements and pairings"), ("verify", "run verification suites")):
        sp = sub.add_parser(name, help=text)
        sp.add_argument("--seed", type=int, default=0, help="seed for sampled root vectors (default 0)")
        sp.add_argument("--samples", type=int, default=adm.DEFAULT_SAMPLES, help="random root vectors per root (default %(default)s)")
        add_report_flags(sp)
        if name == "admissible":
            sp.add_argument("file")
        else:
            sp.add_argument("file", nargs="?")
            sp.add_argument("--family", choices=sorted(rsys.FAMILY_MINIMUM))
            sp.add_argument("--n", type=int)
            sp.add_argument("--suite", action="append", default=[], choices=sorted(SUITES), help="suite to run (repeatable; default all applicable)")

    sp = sub.add_parser("build", help="write a classical algebra file with its diagonal toral subalgebra")
    sp.add_argument("family", choices=["gl", "sl", "so_odd", "so_even", "sp", "abelian"])
    sp.add_argument("n", type=int)
    sp.add_argument("-o", "--output", help="output path (default stdout)")
    sp.add_argument("--format", choices=["text", "json"], default="text")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        if args.command == "build":
            text = cmd_build(args.family, args.n, args.output, args.format)
            if args.output:
                Path(args.output).write_text(text, encoding="utf-8")
            else:
                sys.stdout.write(text)
            return EXIT_OK
        if args.command == "validate":
            report = cmd_validate(args.file)
        elif args.command == "decompose":
            report = cmd_decompose(args.file)
        elif args.command == "admissible":
            if args.samples < 0:
                raise InputError("--samples must be nonnegative")
            report = cmd_admissible(args.file, args.seed, args.samples)
        else:
            if (args.file is None) == (args.family is None):
                raise InputError("verify needs exactly one of FILE or --family")
            if args.family is not None and args.n is None:
                raise InputError("--family needs --n")
            report = cmd_verify(args.file, args.family, args.n, args.suite, args.seed, args.samples)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except LieError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.timing:
        report.timing = {"seconds": round(time.perf_counter() - start, 3)}
    if args.json == "-":
        sys.stdout.write(report.dumps())
    else:
        _print_human(report, sys.stdout)
        if args.json:
            Path(args.json).write_text(report.dumps(), encoding="utf-8")
    return EXIT_OK if report.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
