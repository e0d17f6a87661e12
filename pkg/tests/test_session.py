import json
import pathlib

import pytest

from aggraded.cli import main
from aggraded.session import (SessionError, execute, parse_session, render_report,
                              summarize)

SESSIONS = pathlib.Path(__file__).resolve().parent.parent / "sessions"

SEMIGROUP = (SESSIONS / "semigroup.session").read_text()
SQUARES = (SESSIONS / "squares.session").read_text()


def test_parse_semigroup_session():
    ses = parse_session(SEMIGROUP)
    assert ses.variables == ("X", "Y", "Z")
    assert ses.characteristic == 32003
    assert len(ses.ideal_strings) == 3
    assert ses.modules["M"] == ("F", "N")
    assert ("M", "purity") in ses.commands


def test_missing_vars_is_an_error():
    with pytest.raises(SessionError) as err:
        parse_session("char 5\nfree F : rank 1\n")
    assert "vars" in str(err.value)


def test_unknown_identifier_names_the_line():
    text = "vars x y\nfree F : rank 1\nmodule M = F / NOPE\n"
    with pytest.raises(SessionError) as err:
        parse_session(text)
    assert "line 3" in str(err.value)


def test_non_prime_characteristic_rejected():
    with pytest.raises(SessionError):
        parse_session("char 32004\nvars x\n")


def test_unit_generator_rejected_at_execution():
    text = (
        "vars x y\nflavor local\nideal I :\nfree F : rank 1\n"
        "submodule N in F : [1 + x]\nmodule M = F / N\nanalyze M : betti\n"
    )
    ses = parse_session(text)
    report, status = execute(ses)
    assert status == 1
    assert "mF required" in report["provenance"]["error"]


def test_semigroup_execution_and_rendering():
    ses = parse_session(SEMIGROUP)
    report, status = execute(ses)
    assert status == 2  # betti over A is inconclusive at the cutoff
    by_cmd = {(e["target"], e["command"]): e for e in report["results"]}
    tc = by_cmd[("ring", "tangentcone")]["result"]["generators"]
    assert sorted(tc) == sorted(["X*Z", "Y*Z", "Z^2", "Y^4"])
    hil = by_cmd[("ring", "hilbert")]["result"]
    assert hil["series"] == "(1 + 2*z + z^3)/(1-z)"
    assert hil["dim"] == 1 and hil["multiplicity"] == 4
    inv = by_cmd[("ring", "invariants")]["result"]
    assert inv["depth"] == 0 and inv["cmd"] == 1
    pur = by_cmd[("M", "purity")]["result"]
    assert pur["verdict"] == "not-pure"
    assert pur["route_a"]["witness"]["degrees"] == [1, 3]
    assert pur["route_b"]["homology_witness"]["position"] == 1
    assert not pur["route_b"]["coker_matches"]
    text = summarize(report)
    assert "NOT PURE" in text and "degrees {1, 3}" in text


def test_squares_execution_all_conclusive():
    ses = parse_session(SQUARES)
    report, status = execute(ses)
    assert status == 0
    by_cmd = {e["command"]: e for e in report["results"]}
    assert by_cmd["purity"]["result"]["verdict"] == "pure"
    assert by_cmd["purity"]["result"]["delta"] == [0, 2, 4, 6]
    hk = by_cmd["hk"]["result"]
    assert hk["conditions"]["betti_eq_hk"] is True
    assert hk["multiplicity_sides"] == ["8", "8"]


def test_report_determinism_and_roundtrip():
    ses = parse_session(SEMIGROUP)
    r1, s1 = execute(ses)
    r2, s2 = execute(parse_session(SEMIGROUP))
    assert s1 == s2
    assert render_report(r1) == render_report(r2)
    back = json.loads(render_report(r1))
    assert back["results"] == json.loads(render_report(r2))["results"]


def test_cli_end_to_end(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["run", str(SESSIONS / "squares.session"), "--out", str(out)])
    assert code == 0
    captured = capsys.readouterr().out
    assert "PURE of type (0, 2, 4, 6)" in captured
    data = json.loads(out.read_text())
    assert data["provenance"]["characteristic"] == 32003


def test_cli_reports_parse_errors(tmp_path, capsys):
    bad = tmp_path / "bad.session"
    bad.write_text("vars x\nfree F : rank\n")
    assert main(["run", str(bad)]) == 1
    assert "line 2" in capsys.readouterr().err


def test_cli_char_override(tmp_path):
    out = tmp_path / "r.json"
    code = main(["run", str(SESSIONS / "squares.session"), "--char", "101", "--out", str(out)])
    assert code == 0
    data = json.loads(out.read_text())
    assert data["provenance"]["characteristic"] == 101


def test_graded_flavor_session():
    text = (
        "char 32003\nvars x y\nflavor graded\nideal J : x*y\n"
        "free F : rank 1\nsubmodule N in F : [x], [y]\nmodule K = F / N\n"
        "option max_homdeg 5\nanalyze K : betti, hilbert, purity\nanalyze ring : hilbert\n"
    )
    report, status = execute(parse_session(text))
    by = {(e["target"], e["command"]): e for e in report["results"]}
    assert by[("ring", "hilbert")]["result"]["series"] == "(1 + z)/(1-z)"
    pur = by[("K", "purity")]["result"]
    assert pur["is_pure"] and pur["verdict"] == "inconclusive-at-cutoff"
    assert status == 2


def test_graded_flavor_rejects_local_commands():
    text = (
        "vars x y\nflavor graded\nideal J : x*y\nfree F : rank 1\n"
        "submodule N in F : [x]\nmodule K = F / N\nanalyze K : fstar\n"
    )
    report, status = execute(parse_session(text))
    assert status == 1 and "local flavor" in report["results"][0]["error"]


def test_free_module_session():
    text = (
        "vars x y\nflavor local\nideal I :\nfree F : rank 2\n"
        "module M = F / 0\nanalyze M : purity, hilbert\n"
    )
    report, status = execute(parse_session(text))
    assert status == 0
    by = {e["command"]: e for e in report["results"]}
    assert by["purity"]["result"]["verdict"] == "pure"
    assert by["hilbert"]["result"]["multiplicity"] == 2
