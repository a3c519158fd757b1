import json

import pytest

from grossopt import solver
from grossopt.cli import OUTPUT_DIR_ENV, main
from grossopt.records import ReportRecord


def test_solve_f3(capsys):
    assert main(["solve", "--function", "f3", "--method", "geom-ltm", "--r", "1.1"]) == 0
    out = capsys.readouterr().out
    assert "trials=145" in out and "f*=-12.031" in out


def test_solve_scaled_same_trials(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["solve", "--function", "f3", "--method", "inf-gl", "--alpha", "1@-1", "--beta", "1@1", "--out", str(out)]) == 0
    rec = ReportRecord.from_json(out.read_text())
    assert rec.trial_count == 172
    assert rec.z_best.digit(1) == 1.0 and rec.z_best.digit(-1) == pytest.approx(-12.0312, abs=1e-3)


def test_solve_csv_to_env_dir(tmp_path, monkeypatch):
    monkeypatch.setenv(OUTPUT_DIR_ENV, str(tmp_path))
    assert main(["solve", "--function", "f2", "--method", "inf-ltma", "--format", "csv"]) == 0
    rec = ReportRecord.from_csv((tmp_path / "solve-f2-inf-ltma.csv").read_text())
    assert rec.trial_count == 27


def test_solve_problems_file(tmp_path, capsys):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"problems": [{"name": "v", "domain": [0, 1], "expression": "abs(x - 0.4)", "lipschitz": 1.5}]}))
    assert main(["solve", "--function", "v", "--method", "geom-al", "--problems-file", str(path)]) == 0
    out = capsys.readouterr().out
    assert "x*=0.3999" in out and "z*=1.63" in out and "@" not in out


def test_missing_method():
    with pytest.raises(SystemExit) as info:
        main(["solve", "--function", "f3"])
    assert info.value.code == 2


def test_unknown_function(capsys):
    assert main(["solve", "--function", "f9", "--method", "geom-al"]) != 0
    assert "unknown function" in capsys.readouterr().err


def test_solver_error(capsys):
    assert main(["solve", "--function", "f3", "--method", "geom-al", "--L", "1@0"]) == 1
    assert "does not exceed" in capsys.readouterr().err


def test_homogeneity_all(capsys):
    assert main(["homogeneity", "--function", "all", "--method", "all", "--scales", "1@-1,1@1;1@1,1@2", "--strict"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 48 and all(l.startswith("OK") for l in lines)


def test_homogeneity_trivial_scale():
    assert main(["homogeneity", "--function", "f1", "--method", "geom-gl", "--scales", "1@0,0"]) == 0


def test_homogeneity_bad_scale(capsys):
    with pytest.raises(SystemExit) as info:
        main(["homogeneity", "--scales", "1@,0"])
    assert info.value.code == 2
    assert "position" in capsys.readouterr().err


def test_homogeneity_broken_estimator(monkeypatch, capsys):
    real = solver._malt
    monkeypatch.setattr(solver, "_malt", lambda H, j, hk, dx, xmax, r: real(H, j, hk, dx, xmax, r if hk > 1 else 1.3))
    assert main(["homogeneity", "--function", "f2", "--method", "geom-ltma", "--scales", "1@-1,1@1"]) == 1
    assert "diverged at iteration" in capsys.readouterr().out


def test_demo_illcond(tmp_path, capsys):
    out = tmp_path / "ic.dat"
    assert main(["demo-illcond", "--step", "1e-3", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "ill-conditioning detected" in text and "-12.03" in text
    rows = out.read_text().splitlines()
    assert rows[0] == "# x value series" and len(rows) == 1 + 3 * 20001


def test_demo_identity(capsys):
    assert main(["demo-illcond", "--alpha", "1", "--beta", "0", "--step", "1e-2"]) == 0
    assert "no ill-conditioning detected" in capsys.readouterr().out


def test_bench(capsys):
    assert main(["bench", "--function", "f2", "--method", "geom-ltm"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "problem,method,identity,1@-1,1@1,1@1,1@2"
    assert lines[1] == "f2,geom-ltm,36,36,36"


def test_plain_numbers_as_scalars(capsys):
    assert main(["solve", "--function", "f2", "--method", "geom-al", "--L", "6", "--alpha", "2", "--beta", "10"]) == 0
    assert "trials=" in capsys.readouterr().out
    with pytest.raises(SystemExit):
        main(["solve", "--function", "f2", "--method", "geom-al", "--L", "inf"])
