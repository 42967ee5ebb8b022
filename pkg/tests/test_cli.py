import csv
import io
import json

import pytest
from click.testing import CliRunner

from spechtlab.cli import main
from spechtlab.lattice_engine import LatticeGraph


@pytest.fixture
def run():
    runner = CliRunner()

    def go(*args):
        return runner.invoke(main, [str(a) for a in args], catch_exceptions=False)

    return go


def test_predict(run):
    res = run("predict", "9,5")
    assert res.exit_code == 0
    data = json.loads(res.stdout)
    assert data["uniserial"] is False
    assert data["uniserial_witness"] == [0, 1, 2]
    assert data["socle"]["nu"] == [12, 2]
    res = run("predict", "7,7")
    assert json.loads(res.stdout)["uniserial"] is True


def test_predict_rejects_other_shapes(run):
    res = run("predict", "6,1^2")
    assert res.exit_code == 2
    assert "hooks" in res.stderr
    assert run("predict", "3,x").exit_code == 2


def test_lattice_json(run, tmp_path):
    out = tmp_path / "l.json"
    res = run("lattice", "12,2", "--json", out)
    assert res.exit_code == 0
    L = LatticeGraph.from_json(out.read_text())
    assert sorted(L.dims) == [0, 12, 13, 77]
    report = json.loads(res.stderr.strip().splitlines()[-1])
    assert report["prediction"]["ok"] and report["uniserial"]


def test_lattice_dot_and_verify(run):
    res = run("lattice", "--hook", 10, 4, "--dot", "--verify")
    assert res.exit_code == 0
    L = LatticeGraph.from_dot(res.stdout)
    assert len(L) == 22
    assert json.loads(res.stderr.strip().splitlines()[-1])["problems"] == []


def test_lattice_usage_and_truncation(run):
    assert run("lattice").exit_code == 2
    assert run("lattice", "3,2,1").exit_code == 2
    res = run("lattice", "--hook", 10, 4, "--guard", 4)
    assert res.exit_code == 3


def test_hooks_csv(run, tmp_path):
    res = run("hooks", "--n", "8-10", "--verify", "--diff", tmp_path / "d.csv")
    assert res.exit_code == 0
    rows = list(csv.DictReader(io.StringIO(res.stdout)))
    assert {int(r["n"]) for r in rows} == {8, 9, 10}
    assert all(r["agree"] == "1" for r in rows)
    row = next(r for r in rows if r["n"] == "8" and r["r"] == "2")
    assert row["uniserial"] == "0"


def test_filtration_exactseq_dual(run):
    res = run("filtration", 10, 4)
    assert res.exit_code == 0 and json.loads(res.stdout)["dims"] == [90, 125, 126]
    assert run("filtration", 9, 5).exit_code == 2
    res = run("exactseq", 10)
    data = json.loads(res.stdout)
    assert res.exit_code == 0 and data["ok"] and len(data["junctions"]) == 5
    assert run("exactseq", 9).exit_code == 2
    res = run("dual", 9, 3)
    data = json.loads(res.stdout)
    assert res.exit_code == 0 and data["isomorphism"] and data["self_reverse"]


def test_conjectures(run):
    res = run("conjectures", "--hook-period", "r=3 n=8,12")
    data = json.loads(res.stdout)
    assert data["hook_period"]["comparisons"][0]["isomorphic"]
    assert run("conjectures").exit_code == 2


def test_tables(run):
    res = run("tables", "witness", "--parity", "even")
    rows = list(csv.reader(io.StringIO(res.stdout)))
    assert rows[1] == ["0", "6"] and len(rows) == 33
    res = run("tables", "remaining")
    assert len(res.stdout.strip().splitlines()) == 12
