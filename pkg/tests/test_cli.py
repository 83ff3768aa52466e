import json

import pytest

from einstein_spaces.pipeline.cli import main


def test_list(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    assert "stiefel-metric7" in out and "wallach-SO" in out


def test_ricci_evaluated(capsys):
    assert main(["ricci", "--case", "flag-q2", "--param", "d1=6", "--param", "d2=3", "--at", "x1=1,x2=2"]) == 0
    # the Kahler-Einstein point: both components agree
    assert capsys.readouterr().out.splitlines() == ["r_x1 = 1/3", "r_x2 = 1/3"]


def test_system_then_groebner_then_roots(tmp_path, capsys):
    sysfile, gbfile = tmp_path / "sys.json", tmp_path / "gb.json"
    assert main(["system", "--case", "stiefel-metric7", "--n", "7", "--out", str(sysfile)]) == 0
    data = json.loads(sysfile.read_text())
    assert data["variables"] == ["x2", "x12", "x13"] and len(data["equations"]) == 3
    assert main(["groebner", "--in", str(sysfile), "--vars", "z,x2,x12,x13",
                 "--saturate", "x2*x12*x13*(x13-1)", "--out", str(gbfile)]) == 0
    assert json.loads(gbfile.read_text())["basis"]
    capsys.readouterr()
    assert main(["roots", "--poly", str(gbfile), "--from", "0", "--to", "2"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("2 root(s) of degree-10")


def test_roots_fixture_json(capsys):
    assert main(["roots", "--fixture", "h1", "--n", "9", "--from", "0", "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["degree"] == 10 and len(rep["roots"]) == 2


def test_run_exit_status_and_json(capsys):
    assert main(["run", "--case", "flag-q2", "--param", "d1=6", "--param", "d2=3", "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert sorted(r["classification"] for r in rep["records"]) == ["kahler", "new"]
    assert main(["run", "--case", "stiefel-metric7", "--n", "7"]) == 0
    assert "jensen" in capsys.readouterr().out


def test_sweep_csv(capsys):
    assert main(["sweep", "--case", "stiefel-metric7", "--n-from", "9", "--n-to", "10", "--no-solve",
                 "--report", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 3 and lines[0].startswith("n,")
    assert main(["sweep", "--case", "stiefel-metric7", "--n-from", "7", "--n-to", "7", "--no-solve"]) == 1


def test_verify_single_case(capsys):
    assert main(["verify-paper", "--case", "stiefel-metric7", "--n", "7"]) == 0
    assert main(["verify-paper", "--case", "stiefel-metric6"]) == 1
    assert "FAIL  stiefel-metric6[symbolic] g1" in capsys.readouterr().out


def test_errors_exit_2(capsys):
    assert main(["run", "--case", "no-such-case"]) == 2
    assert main(["run", "--case", "stiefel-metric7", "--n", "3"]) == 2
    assert "error:" in capsys.readouterr().err


def test_bad_usage_exits_via_argparse():
    with pytest.raises(SystemExit):
        main(["run"])
