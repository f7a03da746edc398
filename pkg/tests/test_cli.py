import json
import os
import subprocess
import sys

import pytest

from ccdim.cli import main


@pytest.fixture
def grid_file(tmp_path):
    path = tmp_path / "grid.complex"
    assert main(["gen", "grid", "3", "3", "--out", str(path)]) == 0
    return path


def test_validate(grid_file, tmp_path, capsys):
    assert main(["validate", str(grid_file)]) == 0
    assert "valid" in capsys.readouterr().out
    bad = tmp_path / "bad.complex"
    bad.write_text("hyperplanes: 2\n-\n0 1\n")
    assert main(["validate", str(bad)]) == 1
    assert main(["validate", str(tmp_path / "missing")]) == 2


def test_analyze_and_colour(grid_file, capsys):
    assert main(["analyze", str(grid_file), "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["dimension"] == 2 and doc["flatness"] == 1
    assert [r["rank_vector"] for r in doc["table"]] == [[0]] * 4
    assert main(["colour", str(grid_file), "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc == {"colours": [1, 0, 1, 0], "control": 2, "bound": 2, "passed": True}
    assert main(["colour", str(grid_file)]) == 0
    assert "PASS control 2 <= 2" in capsys.readouterr().out


def test_contract_outputs(grid_file, tmp_path):
    out = tmp_path / "run"
    assert main(["contract", str(grid_file), "--epsilon", "1/2", "--out", str(out)]) == 0
    names = sorted(p.name for p in out.iterdir())
    assert names == ["final.complex", "report.json", "report.txt", "round-01.colouring",
                     "round-01.complex", "round-02.colouring", "round-02.complex"]
    doc = json.loads((out / "report.json").read_text())
    assert doc["composite_factor"] == "4/9" and doc["status"] == "reached"
    assert main(["contract", str(grid_file), "--epsilon", "1/1000", "--max-rounds", "1",
                 "--track", "sample:3", "--out", str(out)]) == 1


@pytest.mark.parametrize("argv", [
    ["contract", "f", "--epsilon", "0.5", "--out", "o"],
    ["contract", "f", "--epsilon", "3/2", "--out", "o"],
    ["contract", "f", "--epsilon", "1/2", "--track", "some", "--out", "o"],
    ["gen", "cube", "--out", "o"],
    ["audit", "f", "--suite", "bogus"],
    [],
])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


def test_gen_usage_errors(tmp_path):
    out = str(tmp_path / "x")
    assert main(["gen", "path", "x", "--out", out]) == 2
    assert main(["gen", "path", "--out", out]) == 2
    assert main(["gen", "random_median", "5", "--out", out]) == 2
    assert main(["gen", "tree", "3", "--out", out]) == 2
    assert main(["gen", "product", "a", "--out", out]) == 2


def test_gen_kinds(tmp_path, grid_file):
    cases = [["path", "3"], ["tripod"], ["tree", "0", "0", "1"], ["ell_grid"],
             ["random_median", "8", "4", "4", "--seed", "3"], ["product", str(grid_file), str(grid_file)]]
    for i, args in enumerate(cases):
        out = tmp_path / f"g{i}.json"
        assert main(["gen", *args, "--out", str(out)]) == 0
        assert main(["validate", str(out)]) == 0


def test_audit(grid_file, capsys):
    assert main(["audit", str(grid_file), "--suite", "all", "--samples", "50", "--seed", "7"]) == 0
    out = capsys.readouterr().out
    assert "0 failed" in out
    assert main(["audit", str(grid_file), "--suite", "colouring", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["passed"]


def test_module_entry_point(grid_file):
    env = dict(os.environ, CCDIM_THREADS="1")
    done = subprocess.run([sys.executable, "-m", "ccdim", "validate", str(grid_file)],
                          capture_output=True, text=True, env=env)
    assert done.returncode == 0 and "valid" in done.stdout
