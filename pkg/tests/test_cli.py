import io
import json
import contextlib
from pathlib import Path

import jsonschema
import pytest

from matchless import Family, serialize_family
from matchless.cli import run

GOLDEN = Path(__file__).parent / "golden"


def invoke(argv, env_test=True, monkeypatch=None):
    if monkeypatch is not None:
        if env_test:
            monkeypatch.setenv("MATCHLESS_TEST", "1")
        else:
            monkeypatch.delenv("MATCHLESS_TEST", raising=False)
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        rc = run(argv)
    return rc, buf.getvalue()


def golden_cases():
    cases = []
    for path in sorted(GOLDEN.glob("*.txt")):
        text = path.read_text()
        lines = text.split("\n")
        argv = json.loads(lines[0].removeprefix("# argv: "))
        expected_rc = int(lines[1].removeprefix("# exit: "))
        expected_out = "\n".join(lines[2:])
        cases.append(pytest.param(argv, expected_rc, expected_out, id=path.stem))
    return cases


@pytest.mark.parametrize("argv,expected_rc,expected_out", golden_cases())
def test_golden(argv, expected_rc, expected_out, monkeypatch):
    rc, out = invoke(argv, monkeypatch=monkeypatch)
    assert rc == expected_rc
    assert out == expected_out


def test_reruns_are_byte_identical(monkeypatch):
    argv = ["report", "lemma33", "--grid", "k=1..2 s=3..4 n=5..9"]
    rc1, out1 = invoke(argv, monkeypatch=monkeypatch)
    rc2, out2 = invoke(argv, monkeypatch=monkeypatch)
    assert rc1 == rc2 == 0
    assert out1 == out2


def test_report_json_validates_against_schema(monkeypatch):
    import matchless

    schema = json.loads(
        (Path(matchless.__file__).parent / "schemas" / "report.schema.json").read_text()
    )
    # grid mixes HOLDS and FAILS points; exit 1 reflects the failures
    rc, out = invoke(
        ["report", "cond3", "--grid", "m=1..2 l=1..2 t=0..3 n=4..6"],
        monkeypatch=monkeypatch,
    )
    data = json.loads(out)
    assert rc == (0 if data["summary"]["fails"] == 0 else 1)
    jsonschema.validate(data, schema)
    # a SKIPPED-bearing report validates too
    rc, out = invoke(
        ["report", "lemma33", "--grid", "k=2 s=3..4 n=5..7"], monkeypatch=monkeypatch
    )
    assert rc == 0
    data = json.loads(out)
    assert data["summary"]["skipped"] > 0
    jsonschema.validate(data, schema)


def test_report_to_file(tmp_path, monkeypatch):
    out_json = tmp_path / "r.json"
    rc, out = invoke(
        ["report", "lemma33", "--grid", "k=1 s=3 n=2..4", "--out", str(out_json)],
        monkeypatch=monkeypatch,
    )
    assert rc == 0 and out == ""
    data = json.loads(out_json.read_text())
    assert data["summary"]["total"] == 3
    out_csv = tmp_path / "r.csv"
    rc, _ = invoke(
        ["report", "lemma33", "--grid", "k=1 s=3 n=2..4", "--out", str(out_csv)],
        monkeypatch=monkeypatch,
    )
    assert rc == 0
    header = out_csv.read_text().splitlines()[0]
    assert header == "check,point,status,lhs,rhs,margin,note"


def test_nu_and_shift_commands(tmp_path, monkeypatch):
    fam = Family.from_sets(3, [[2, 3]])
    path = tmp_path / "f.fam"
    path.write_text(serialize_family(fam))
    rc, out = invoke(["nu", str(path)], monkeypatch=monkeypatch)
    assert rc == 0
    assert out == "nu=1\nFAMILY v1\nn=3\n2,3\n"
    rc, out = invoke(["shift", str(path), "--closure"], monkeypatch=monkeypatch)
    assert rc == 0
    assert out == "FAMILY v1\nn=3\n1,2\n"
    rc, out = invoke(["shift", str(path), "--pair", "1", "2"], monkeypatch=monkeypatch)
    assert out == "FAMILY v1\nn=3\n1,3\n"
    rc, out = invoke(["shift", str(path), "--check"], monkeypatch=monkeypatch)
    assert rc == 0 and out == "shifted=false\n"


def test_construct_to_file(tmp_path, monkeypatch):
    target = tmp_path / "star.fam"
    rc, out = invoke(
        ["construct", "star", "n=4", "k=2", "c=1", "-o", str(target)],
        monkeypatch=monkeypatch,
    )
    assert rc == 0 and out == ""
    assert target.read_text() == "FAMILY v1\nn=4\n1,2\n1,3\n1,4\n"


def test_oracle_witness_file(tmp_path, monkeypatch):
    target = tmp_path / "w.fam"
    rc, out = invoke(
        ["oracle", "e", "4", "2", "--witness", str(target)], monkeypatch=monkeypatch
    )
    assert rc == 0
    payload = json.loads(out)
    assert payload["value"] == 8
    assert payload["witness_file"] == str(target)
    from matchless import parse_family

    assert len(parse_family(target.read_text())) == 8


def test_exit_codes(tmp_path, monkeypatch):
    # usage errors
    assert invoke(["nope"], monkeypatch=monkeypatch)[0] == 2
    assert invoke(["kleitman", "7", "3"], monkeypatch=monkeypatch)[0] == 2
    assert invoke(["check", "lemma33", "n=5", "k=1"], monkeypatch=monkeypatch)[0] == 2
    # cap exceeded
    assert invoke(["oracle", "e", "9", "3"], monkeypatch=monkeypatch)[0] == 3
    # failing inequality exits 1: condition 2 fails at tiny s
    rc, out = invoke(["check", "cond2", "m=2", "s=3", "l=1", "t=0"], monkeypatch=monkeypatch)
    assert rc == 1
    assert json.loads(out)["holds"] is False
    # malformed family file
    bad = tmp_path / "bad.fam"
    bad.write_text("FAMILY v1\nn=2\n3\n")
    assert invoke(["nu", str(bad)], monkeypatch=monkeypatch)[0] == 2


def test_elapsed_zeroed_only_in_test_mode(monkeypatch):
    rc, out = invoke(["oracle", "e", "3", "2"], monkeypatch=monkeypatch)
    assert json.loads(out)["elapsed_ms"] == 0
    rc, out = invoke(["oracle", "e", "3", "2"], env_test=False, monkeypatch=monkeypatch)
    assert json.loads(out)["elapsed_ms"] >= 0


def test_report_failing_point_exits_one(monkeypatch):
    # cond2 with m=2, s=3, t=0 fails; the report must say so and exit 1
    rc, out = invoke(
        ["report", "cond2", "--grid", "m=2 s=3 l=1 t=0"], monkeypatch=monkeypatch
    )
    assert rc == 1
    data = json.loads(out)
    assert data["summary"]["fails"] == 1
