"""Algebra files and machine-readable reports.

Text format, one record per line, ``#`` starts a comment::

    format_version 1          (optional)
    dim 3
    labels e h f              (optional)
    bracket 0 1 -> 0:-2
    bracket 0 2 -> 1:1
    bracket 1 2 -> 2:-2
    toral 0 1 0               (zero or more)

Indices are 0-based, ``i < j`` in every bracket line, coefficients are ``p``
or ``p/q``.  The JSON form carries the same fields::

    {"format_version": 1, "dim": 3, "labels": [...],
     "brackets": [{"i": 0, "j": 1, "k": 0, "c": "-2"}, ...],
     "toral": [["0", "1", "0"]]}

Rationals are always strings in JSON, never floats.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .exact_linalg import format_rational, parse_rational
from .lie_core import LieAlgebra

FORMAT_VERSION = 1


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.message = message


@dataclass(frozen=True)
class AlgebraFile:
    format_version: int
    dim: int
    labels: tuple
    brackets: tuple  # ((i, j, k, Fraction), ...)
    toral: tuple  # ((Fraction, ...), ...)

    def algebra(self) -> LieAlgebra:
        structure: dict = {}
        for i, j, k, c in self.brackets:
            structure.setdefault((i, j), []).append((k, c))
        return LieAlgebra(self.dim, structure, self.labels or None)


def _tokens(line: str) -> list[tuple[str, int]]:
    """Whitespace-separated tokens with their 1-based columns."""
    out, col, n = [], 0, len(line)
    while col < n:
        while col < n and line[col].isspace():
            col += 1
        start = col
        while col < n and not line[col].isspace():
            col += 1
        if start < col:
            out.append((line[start:col], start + 1))
    return out


def _rational(tok: str, line: int, col: int) -> Fraction:
    try:
        return parse_rational(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {tok!r}", line, col) from None


def _integer(tok: str, line: int, col: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"not an integer: {tok!r}", line, col) from None


def _finish(version, dim, labels, brackets, toral, where) -> AlgebraFile:
    seen = set()
    for (i, j, k, _), (line, icol, jcol, col) in zip(brackets, where["brackets"]):
        for idx, c in ((i, icol), (j, jcol), (k, col)):
            if not 0 <= idx < dim:
                raise ParseError(f"index {idx} out of range for dim {dim}", line, c)
        if i >= j:
            raise ParseError(f"bracket indices must satisfy i < j, got {i} {j}", line, icol)
        if (i, j, k) in seen:
            raise ParseError(f"duplicate term for bracket ({i}, {j}) and index {k}", line, col)
        seen.add((i, j, k))
    for vec, (line, col) in zip(toral, where["toral"]):
        if len(vec) != dim:
            raise ParseError(f"toral vector has {len(vec)} entries, expected {dim}", line, col)
    if labels and len(labels) != dim:
        line, col = where["labels"]
        raise ParseError(f"{len(labels)} labels for dim {dim}", line, col)
    return AlgebraFile(version, dim, tuple(labels), tuple(brackets), tuple(toral))


def parse_text(text: str) -> AlgebraFile:
    version, dim, labels = FORMAT_VERSION, None, ()
    brackets, toral = [], []
    where: dict = {"brackets": [], "toral": [], "labels": (0, 0)}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = _tokens(line)
        if not toks:
            continue
        key, kcol = toks[0]
        rest = toks[1:]
        if key == "format_version":
            if len(rest) != 1:
                raise ParseError("format_version takes one integer", lineno, kcol)
            version = _integer(rest[0][0], lineno, rest[0][1])
            if version != FORMAT_VERSION:
                raise ParseError(f"unsupported format_version {version}", lineno, rest[0][1])
            continue
        if key == "dim":
            if dim is not None:
                raise ParseError("dim given twice", lineno, kcol)
            if len(rest) != 1:
                raise ParseError("dim takes one integer", lineno, kcol)
            dim = _integer(rest[0][0], lineno, rest[0][1])
            if dim < 1:
                raise ParseError("dim must be positive", lineno, rest[0][1])
            continue
        if dim is None:
            raise ParseError("expected 'dim N' before other records", lineno, kcol)
        if key == "labels":
            labels = tuple(t for t, _ in rest)
            where["labels"] = (lineno, kcol)
        elif key == "bracket":
            if len(rest) < 4 or rest[2][0] != "->":
                raise ParseError("expected 'bracket i j -> k:c [k:c ...]'", lineno, kcol)
            i = _integer(rest[0][0], lineno, rest[0][1])
            j = _integer(rest[1][0], lineno, rest[1][1])
            for tok, col in rest[3:]:
                if ":" not in tok:
                    raise ParseError(f"expected k:c, got {tok!r}", lineno, col)
                ks, cs = tok.split(":", 1)
                k = _integer(ks, lineno, col)
                c = _rational(cs, lineno, col + len(ks) + 1)
                brackets.append((i, j, k, c))
                where["brackets"].append((lineno, rest[0][1], rest[1][1], col))
        elif key == "toral":
            toral.append(tuple(_rational(t, lineno, col) for t, col in rest))
            where["toral"].append((lineno, kcol))
        else:
            raise ParseError(f"unknown record {key!r}", lineno, kcol)
    if dim is None:
        raise ParseError("missing 'dim N' record", 1, 1)
    return _finish(version, dim, labels, brackets, toral, where)


def parse_json(text: str) -> AlgebraFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", 1, 1)

    def field(name, kind, default=None):
        value = doc.get(name, default)
        if not isinstance(value, kind) or isinstance(value, bool):
            raise ParseError(f"field {name!r} must be {kind.__name__}", 1, 1)
        return value

    version = field("format_version", int, FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported format_version {version}", 1, 1)
    dim = field("dim", int)
    if dim < 1:
        raise ParseError("dim must be positive", 1, 1)
    labels = tuple(str(x) for x in field("labels", list, []))
    brackets, where = [], {"brackets": [], "toral": [], "labels": (1, 1)}
    for n, rec in enumerate(field("brackets", list, [])):
        if not isinstance(rec, dict) or not {"i", "j", "k", "c"} <= set(rec):
            raise ParseError(f"bracket record {n} needs i, j, k, c", 1, 1)
        if not all(isinstance(rec[x], int) for x in "ijk") or not isinstance(rec["c"], (str, int)):
            raise ParseError(f"bracket record {n}: indices must be integers and c a string", 1, 1)
        brackets.append((rec["i"], rec["j"], rec["k"], _rational(str(rec["c"]), 1, 1)))
        where["brackets"].append((1, 1, 1, 1))
    toral = []
    for vec in field("toral", list, []):
        if not isinstance(vec, list):
            raise ParseError("toral entries must be lists", 1, 1)
        toral.append(tuple(_rational(str(x), 1, 1) for x in vec))
        where["toral"].append((1, 1))
    return _finish(version, dim, labels, brackets, toral, where)


def parse_algebra(text: str) -> AlgebraFile:
    """JSON when the first non-blank character is ``{``, text otherwise."""
    return parse_json(text) if text.lstrip().startswith("{") else parse_text(text)


def to_file(L: LieAlgebra, toral: Sequence[Sequence] = ()) -> AlgebraFile:
    brackets = []
    for (i, j), terms in sorted(L.structure.items()):
        for k, c in terms:
            brackets.append((i, j, k, Fraction(c)))
    return AlgebraFile(
        FORMAT_VERSION,
        L.dim,
        tuple(L.labels) if L.labels else (),
        tuple(brackets),
        tuple(tuple(Fraction(x) for x in v) for v in toral),
    )


def dump_text(f: AlgebraFile) -> str:
    lines = [f"format_version {f.format_version}", f"dim {f.dim}"]
    if f.labels:
        lines.append("labels " + " ".join(f.labels))
    grouped: dict = {}
    for i, j, k, c in f.brackets:
        grouped.setdefault((i, j), []).append(f"{k}:{format_rational(c)}")
    for (i, j), terms in grouped.items():
        lines.append(f"bracket {i} {j} -> " + " ".join(terms))
    for v in f.toral:
        lines.append("toral " + " ".join(format_rational(x) for x in v))
    return "\n".join(lines) + "\n"


def dump_json(f: AlgebraFile) -> str:
    doc = {
        "format_version": f.format_version,
        "dim": f.dim,
        "labels": list(f.labels),
        "brackets": [{"i": i, "j": j, "k": k, "c": format_rational(c)} for i, j, k, c in f.brackets],
        "toral": [[format_rational(x) for x in v] for v in f.toral],
    }
    return json.dumps(doc, indent=2) + "\n"


def digest(data: bytes | str) -> str:
    if isinstance(data, str):
        data = data.encode("utf-8")
    return "sha256:" + hashlib.sha256(data).hexdigest()


# -- reports -----------------------------------------------------------------------

def to_jsonable(value: Any) -> Any:
    """Rationals become ``"p/q"`` strings, tuples and sets become lists."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, dict):
        return {str(k) if not isinstance(k, tuple) else ",".join(map(str, to_jsonable(list(k)))): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (frozenset, set)):
        return sorted((to_jsonable(v) for v in value), key=lambda x: json.dumps(x, sort_keys=True))
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if hasattr(value, "__dict__") and hasattr(value, "__dataclass_fields__"):
        return {k: to_jsonable(getattr(value, k)) for k in value.__dataclass_fields__}
    return str(value)


@dataclass
class Record:
    name: str
    ok: bool
    summary: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)

    def as_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "summary": to_jsonable(self.summary), "witnesses": to_jsonable(self.witnesses)}


@dataclass
class Report:
    command: str
    input: dict
    records: list
    format_version: int = FORMAT_VERSION
    timing: dict | None = None

    @property
    def ok(self) -> bool:
        return all(r["ok"] if isinstance(r, dict) else r.ok for r in self.records)

    @property
    def verdict(self) -> str:
        return "ok" if self.ok else "failure"

    def as_json(self) -> dict:
        doc = {
            "format_version": self.format_version,
            "command": self.command,
            "input": to_jsonable(self.input),
            "verdict": self.verdict,
            "details": [r if isinstance(r, dict) else r.as_json() for r in self.records],
        }
        if self.timing is not None:
            doc["timing"] = self.timing
        return doc

    def dumps(self) -> str:
        return json.dumps(self.as_json(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def loads(cls, text: str) -> "Report":
        doc = json.loads(text)
        report = cls(doc["command"], doc["input"], doc["details"], doc["format_version"], doc.get("timing"))
        if report.verdict != doc["verdict"]:
            raise ValueError("verdict does not match the recorded details")
        return report
