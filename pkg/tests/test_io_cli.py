import json
import subprocess
import sys
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exactlie.classical import build_classical
from exactlie.cli import main
from exactlie.exact_linalg import parse_rational
from exactlie.io import AlgebraFile, ParseError, Report, digest, dump_json, dump_text, parse_algebra, parse_json, parse_text, to_file

import data

SL2_TEXT = """# sl2 in the basis e, h, f
dim 3
labels e h f
bracket 0 1 -> 0:-2
bracket 0 2 -> 1:1
bracket 1 2 -> 2:-2
toral 0 1 0
"""


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return str(p)


def algebra_file(tmp_path, name, L, toral, fmt="text"):
    f = to_file(L, toral)
    return write(tmp_path, name, dump_json(f) if fmt == "json" else dump_text(f))


def run_json(argv, capsys):
    code = main(argv + ["--json", "-"])
    out = capsys.readouterr().out
    return code, json.loads(out), out


# -- parsing --------------------------------------------------------------------------------

def test_parse_text_example():
    f = parse_text(SL2_TEXT)
    assert f.dim == 3 and f.labels == ("e", "h", "f")
    assert f.brackets == ((0, 1, 0, F(-2)), (0, 2, 1, F(1)), (1, 2, 2, F(-2)))
    assert f.toral == ((F(0), F(1), F(0)),)


def test_parse_rational_coefficients():
    f = parse_text("dim 2\nbracket 0 1 -> 0:-3/2 1:4/6\n")
    assert f.brackets == ((0, 1, 0, F(-3, 2)), (0, 1, 1, F(2, 3)))


@pytest.mark.parametrize(
    "text,line,column",
    [
        ("labels a\n", 1, 1),
        ("dim 2\nbracket 1 0 -> 0:1\n", 2, 9),
        ("dim 2\nbracket 0 1 -> 5:1\n", 2, 16),
        ("dim 2\nbracket 0 1 -> 0:x\n", 2, 18),
        ("dim 2\nbracket 0 1 -> 0:1/0\n", 2, 18),
        ("dim 2\nbracket 0 1 0:1\n", 2, 1),
        ("dim 2\nfrobnicate\n", 2, 1),
        ("dim 2\ntoral 1\n", 2, 1),
        ("dim 2\nlabels a b c\n", 2, 1),
        ("format_version 7\ndim 2\n", 1, 16),
        ("", 1, 1),
    ],
)
def test_parse_errors_carry_position(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_text(text)
    assert (info.value.line, info.value.column) == (line, column)
    assert f"line {line}, column {column}" in str(info.value)


def test_duplicate_bracket_rejected():
    with pytest.raises(ParseError) as info:
        parse_text("dim 2\nbracket 0 1 -> 0:1\nbracket 0 1 -> 0:2\n")
    assert info.value.line == 3


def test_parse_json_rejects_floats_and_bad_json():
    with pytest.raises(ParseError):
        parse_json('{"dim": 2, "brackets": [{"i": 0, "j": 1, "k": 0, "c": 0.5}]}')
    with pytest.raises(ParseError) as info:
        parse_json('{"dim": 2,\n "brackets": [}')
    assert info.value.line == 2


@pytest.mark.parametrize("fam,n", [("sl", 3), ("so_odd", 2), ("sp", 2), ("gl", 2), ("abelian", 2)])
def test_round_trip_text_and_json(fam, n):
    L, T = build_classical(fam, n)
    f = to_file(L, T.basis)
    for text in (dump_text(f), dump_json(f)):
        g = parse_algebra(text)
        assert g == f
        assert g.algebra().structure == L.structure


@settings(max_examples=50, deadline=None)
@given(st.lists(st.fractions(max_denominator=50).filter(lambda q: q != 0), min_size=1, max_size=6))
def test_round_trip_arbitrary_rationals(coeffs):
    brackets = tuple((0, 1, k % 3, c) for k, c in enumerate(coeffs[:3]))
    toral = (tuple(coeffs[:3] + [F(0)] * (3 - len(coeffs[:3]))),)
    f = AlgebraFile(1, 3, (), brackets, toral)
    assert parse_text(dump_text(f)) == f
    assert parse_json(dump_json(f)) == f


def test_digest_is_stable():
    assert digest(SL2_TEXT) == digest(SL2_TEXT.encode())
    assert digest(SL2_TEXT).startswith("sha256:")
    assert digest(SL2_TEXT) != digest(SL2_TEXT + " ")


# -- validate ----------------------------------------------------------------------------------

def test_validate_examples(tmp_path, capsys):
    code, doc, _ = run_json(["validate", write(tmp_path, "sl2.txt", SL2_TEXT)], capsys)
    assert code == 0 and doc["verdict"] == "ok"
    assert doc["input"]["digest"] == digest(SL2_TEXT)
    code, doc, _ = run_json(["validate", write(tmp_path, "ab.txt", "dim 3\n")], capsys)
    assert code == 0
    broken = SL2_TEXT.replace("bracket 0 2 -> 1:1", "bracket 0 2 -> 0:1")
    code, doc, _ = run_json(["validate", write(tmp_path, "bad.txt", broken)], capsys)
    assert code == 1 and doc["verdict"] == "failure"
    (w,) = doc["details"][0]["witnesses"]
    assert sorted(w["triple"]) == [0, 1, 2] and sorted(w["labels"]) == ["e", "f", "h"]


def test_input_errors_exit_2(tmp_path, capsys):
    assert main(["validate", str(tmp_path / "missing.txt")]) == 2
    assert main(["validate", write(tmp_path, "bad.txt", "dim 2\nbracket 0 0 -> 1:1\n")]) == 2
    err = capsys.readouterr().err
    assert "line 2, column 9" in err


# -- decompose -----------------------------------------------------------------------------------

def test_decompose_examples(tmp_path, capsys):
    L, T = data.pair("sl", 3)
    code, doc, _ = run_json(["decompose", algebra_file(tmp_path, "sl3.txt", L, T.basis)], capsys)
    summary = doc["details"][0]["summary"]
    assert code == 0 and summary["roots"] == 6 and summary["zero_space_dim"] == 2
    assert [w["dim"] for w in summary["weights"]] == [1] * 6
    assert all(isinstance(c, str) for w in summary["weights"] for c in w["weight"])
    # sl2 with span{e} as toral data is an input error
    not_toral = SL2_TEXT.replace("toral 0 1 0", "toral 1 0 0")
    assert main(["decompose", write(tmp_path, "nt.txt", not_toral)]) == 2
    assert "NotToral" in capsys.readouterr().err
    code, doc, _ = run_json(["decompose", write(tmp_path, "ab.txt", "dim 2\ntoral 1 0\ntoral 0 1\n")], capsys)
    assert code == 0 and doc["details"][0]["summary"]["roots"] == 0


# -- admissible -----------------------------------------------------------------------------------

def test_admissible_sl4(tmp_path, capsys):
    L, T = data.pair("sl", 4)
    code, doc, _ = run_json(["admissible", algebra_file(tmp_path, "sl4.json", L, T.basis, "json")], capsys)
    assert code == 0
    s = doc["details"][0]["summary"]
    assert len(s["roots"]) == 12 and s["components"] == 1
    entries = {parse_rational(x) for row in s["pairings"] for x in row}
    assert entries <= {-2, -1, 0, 1, 2}
    assert all(item["integrable"] for item in s["integrable"])


def test_admissible_gl3_fails_clause_one(tmp_path, capsys):
    L, T = data.pair("gl", 3)
    code, doc, _ = run_json(["admissible", algebra_file(tmp_path, "gl3.txt", L, T.basis)], capsys)
    assert code == 1 and doc["verdict"] == "failure"
    (w,) = doc["details"][0]["witnesses"]
    assert w["clause"] == 1
    direction = [parse_rational(x) for x in w["direction"]]
    assert len(set(direction)) == 1 and direction[0] != 0


def test_admissible_sl2_sum_has_two_components(tmp_path, capsys):
    L, T = data.sum_pair(("sl", 2), ("sl", 2))
    code, doc, _ = run_json(["admissible", algebra_file(tmp_path, "two.txt", L, T.basis)], capsys)
    assert code == 0 and doc["details"][0]["summary"]["components"] == 2


def test_admissible_is_deterministic(tmp_path, capsys):
    L, T = data.pair("sp", 2)
    path = algebra_file(tmp_path, "sp4.txt", L, T.basis)
    outs = [run_json(["admissible", path, "--seed", "7"], capsys)[2] for _ in range(2)]
    assert outs[0] == outs[1]
    assert "timing" not in json.loads(outs[0])
    code, doc, _ = run_json(["admissible", path, "--timing"], capsys)
    assert "timing" in doc


# -- verify ----------------------------------------------------------------------------------------

def test_verify_family_chain(capsys):
    code, doc, _ = run_json(["verify", "--family", "A", "--n", "4", "--suite", "chain"], capsys)
    assert code == 0 and [d["name"] for d in doc["details"]] == ["chain"]


def test_verify_bc2_sdiv(capsys):
    code, doc, _ = run_json(["verify", "--family", "BC", "--n", "2", "--suite", "sdiv"], capsys)
    s = doc["details"][0]["summary"]
    assert code == 0 and s["reduced"] is False and s["sdiv_roots"] == 8


def test_verify_sl3_loc5(tmp_path, capsys):
    L, T = data.pair("sl", 3)
    code, doc, _ = run_json(["verify", algebra_file(tmp_path, "sl3.txt", L, T.basis), "--suite", "loc5"], capsys)
    assert code == 0
    (rec,) = doc["details"]
    assert rec["ok"] and rec["summary"]["strings"]


def test_verify_all_suites_sl3_ordered_by_name(tmp_path, capsys):
    L, T = data.pair("sl", 3)
    code, doc, _ = run_json(["verify", algebra_file(tmp_path, "sl3.txt", L, T.basis)], capsys)
    names = [d["name"] for d in doc["details"]]
    assert code == 0 and names == sorted(names) and len(names) >= 10


def test_verify_failure_exit_1(tmp_path, capsys):
    L, T = data.pair("gl", 3)
    code, doc, _ = run_json(["verify", algebra_file(tmp_path, "gl3.txt", L, T.basis), "--suite", "admissible"], capsys)
    assert code == 1 and doc["verdict"] == "failure"


def test_verify_input_errors(tmp_path, capsys):
    assert main(["verify"]) == 2
    assert main(["verify", "--family", "A"]) == 2
    assert main(["verify", "--family", "D", "--n", "1"]) == 2
    assert main(["verify", "--family", "A", "--n", "3", "--suite", "loc5"]) == 2
    capsys.readouterr()


# -- reports -----------------------------------------------------------------------------------------

def test_report_round_trip_preserves_witnesses(tmp_path, capsys):
    L, T = data.pair("gl", 3)
    path = algebra_file(tmp_path, "gl3.txt", L, T.basis)
    _, doc, out = run_json(["admissible", path], capsys)
    report = Report.loads(out)
    assert report.verdict == doc["verdict"] == "failure"
    assert report.dumps() == out
    w = report.records[0]["witnesses"][0]
    element = [parse_rational(x) for x in w["element"]]
    assert all(isinstance(x, F) for x in element)
    tampered = json.loads(out)
    tampered["verdict"] = "ok"
    with pytest.raises(ValueError):
        Report.loads(json.dumps(tampered))


def test_build_round_trip(tmp_path, capsys):
    out = tmp_path / "sp4.json"
    assert main(["build", "sp", "2", "-o", str(out), "--format", "json"]) == 0
    L, T = data.pair("sp", 2)
    assert parse_algebra(out.read_text()) == to_file(L, T.basis)
    assert main(["build", "sl", "2"]) == 0
    assert parse_algebra(capsys.readouterr().out).dim == 3
    assert main(["build", "sl", "0"]) == 2


def test_module_entry_point(tmp_path):
    path = write(tmp_path, "sl2.txt", SL2_TEXT)
    proc = subprocess.run([sys.executable, "-m", "exactlie", "admissible", path], capture_output=True, text=True, timeout=60)
    assert proc.returncode == 0
    assert proc.stdout.startswith("admissible: ok")
