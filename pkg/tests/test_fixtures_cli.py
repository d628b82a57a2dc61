from __future__ import annotations

import json

import pytest

from equivgal.cli import main
from equivgal.fixtures import FIXTURES, run_fixture


@pytest.mark.parametrize("name", ["sl2-sqrtx", "sl2-toric", "e6-weyl"])
def test_fixture_passes(name):
    res = run_fixture(name)
    assert res.passed, res.to_json()


def test_unknown_fixture():
    with pytest.raises(ValueError):
        run_fixture("nope")
    assert {"sl2-sqrtx", "sl2-toric", "e6-weyl", "e7-weyl", "b-ell-table", "section5"} <= set(FIXTURES)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_weyl_words(capsys):
    code, out, _ = run(capsys, "weyl", "--type", "A", "--rank", "3", "--word", "1,2,3", "--word", "")
    assert code == 0
    data = json.loads(out)
    assert data["orbit_size"] == 4
    assert data["words"][0]["cycle_type"] == [4]
    assert data["words"][1]["cycle_type"] == [1, 1, 1, 1]


def test_weyl_enumerate_and_search(capsys):
    code, out, _ = run(capsys, "weyl", "--type", "B4", "--find-transitive", "--deterministic")
    data = json.loads(out)
    assert code == 0 and data["orbit_size"] == 16
    assert data["strictly_transitive_sets"] == [] and data["exhaustive"] is True
    code, out, _ = run(capsys, "weyl", "--type", "E6", "--enumerate")
    data = json.loads(out)
    assert data["group_order"] == 51840 and data["orbit_size"] == 27


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "weyl", "--type", "E6", "--enumerate", "--cap", "10")[0] == 3
    assert run(capsys, "weyl", "--type", "F4")[0] == 2
    assert run(capsys, "weyl", "--type", "A", "--rank", "2", "--word", "1,5")[0] == 2
    assert run(capsys, "build", "--factor", "A1", "--points", "2,2,5")[0] == 2
    assert run(capsys, "build", "--factor", "A1")[0] == 2
    assert run(capsys, "verify", str(tmp_path / "missing.json"))[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["weyl", "--bogus"])
    assert exc.value.code == 2


def test_build_verify_round_trip(capsys, tmp_path):
    sysfile, report = tmp_path / "sys.json", tmp_path / "report.json"
    assert run(capsys, "build", "--factor", "C2", "--points", "4,9,16", "--n", "2",
               "--action", "inner-diag", "--out", str(sysfile))[0] == 0
    assert run(capsys, "verify", str(sysfile), "--report", str(report))[0] == 0
    bundle = json.loads(report.read_text())
    assert bundle["passed"] is True


def test_mutated_system_fails_verification(capsys, tmp_path):
    sysfile = tmp_path / "bad.json"
    assert run(capsys, "build", "--fixture", "sl2-sqrtx", "--mutation", "zero-nilpotent", "--out", str(sysfile))[0] == 0
    code, out, _ = run(capsys, "verify", str(sysfile))
    assert code == 1
    failed = [c["id"] for c in json.loads(out)["checks"] if c["status"] == "fail"]
    assert any(i.startswith("nilpotent") for i in failed)


def test_deterministic_output_is_byte_identical(capsys):
    a = run(capsys, "--deterministic", "reproduce", "--fixture", "sl2-toric")[1]
    b = run(capsys, "reproduce", "--fixture", "sl2-toric", "--deterministic", "--seed", "7")[1]
    assert a == b and '"seconds"' not in a
