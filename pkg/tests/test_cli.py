import json
import shutil
import subprocess

import pytest

from densesl import io
from densesl.cli import main

from conftest import DATA, GOLDEN

T1 = str(DATA / "table1_group.json")


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_factor(capsys):
    code, out, _ = run(capsys, "factor", DATA / "O7.json", 2)
    assert code == 0
    assert [line.split()[1] for line in out.splitlines()] == ["norm=2", "norm=2"]
    code, out, _ = run(capsys, "factor", DATA / "O7.json", 13)
    assert out.split() == ["13", "norm=169", "e=1", "f=2"]
    code, out, _ = run(capsys, "factor", DATA / "O7.json", 7)
    assert "norm=7 e=2 f=1" in out
    code, _, err = run(capsys, "factor", DATA / "O7.json", 4)
    assert code == 2 and err.startswith("error:")


def test_factor_json(capsys):
    _, out, _ = run(capsys, "factor", DATA / "O3.json", 7, "--format", "json")
    obj = json.loads(out)
    assert obj["p"] == 7 and len(obj["ideals"]) == 2
    assert io.dumps(obj) == out


@pytest.mark.parametrize("name,verdict", [("table1_group", "DENSE"),
                                          ("diagonal", "NOT_DENSE"),
                                          ("finite_order", "NOT_DENSE")])
def test_density(capsys, name, verdict):
    code, out, _ = run(capsys, "density", DATA / f"{name}.json")
    assert code == 0 and out.split("(")[0].strip() == verdict


def test_table_matches_golden(capsys):
    code, out, _ = run(capsys, "table", T1)
    assert code == 0
    assert out == (GOLDEN / "table1.txt").read_text()


def test_table_sat_view(capsys):
    _, out, _ = run(capsys, "table", T1, "--view", "sat")
    golden = (GOLDEN / "table1.txt").read_text().splitlines()
    assert out.splitlines() == golden[:-1]


def test_table_empty(capsys):
    code, out, _ = run(capsys, "table", DATA / "gamma.json")
    assert code == 0 and out.split() == ["ideal", "norm", "index", "structure"]


def test_table_sweep_stamp(capsys):
    code, out, _ = run(capsys, "table", T1, "--sweep-norm", 300)
    assert code == 0
    assert out.splitlines()[-1].startswith("# sweep-verified")


@pytest.mark.parametrize("cmd", [["table", T1], ["pfd", T1], ["tracering", T1],
                                 ["density", T1], ["reduce", T1, "--prime", 11],
                                 ["congcheck", str(DATA / "L13.json"), "--modulus", 24,
                                  "--claimed-index", 27]])
def test_json_round_trip(capsys, cmd):
    code, out, _ = run(capsys, *cmd, "--format", "json")
    assert code == 0
    assert io.dumps(json.loads(out)) == out


def test_table_json_fields(capsys):
    _, out, _ = run(capsys, "table", T1, "--format", "json")
    rows = json.loads(out)["rows"]
    assert [(r["norm"], r["index"], r["structure"]) for r in rows] == [
        (2, 3, "C_2"), (9, 30, "SL(2,3)"), (11, 120, "C_11"), (43, 1848, "C_43"),
        (169, 2210, "SL(2,13)")]


@pytest.mark.parametrize("name,index", [("L9", 16), ("L10", 16), ("L11", 16), ("L12", 16),
                                        ("L13", 27)])
def test_congcheck(capsys, name, index):
    code, out, _ = run(capsys, "congcheck", DATA / f"{name}.json", "--modulus", 24,
                       "--claimed-index", index, "--format", "json")
    obj = json.loads(out)
    assert code == 0 and obj["passed"] and obj["found_index"] == index
    assert obj["ambient_order"] == 159252480
    assert obj["image_order"] * index == obj["ambient_order"]


def test_congcheck_fail_and_gamma(capsys):
    code, out, _ = run(capsys, "congcheck", DATA / "L13.json", "--modulus", 24,
                       "--claimed-index", 16)
    assert code == 1 and "FAIL" in out
    code, out, _ = run(capsys, "congcheck", DATA / "gamma.json", "--modulus", 2,
                       "--claimed-index", 1)
    assert code == 0 and "PASS" in out


def test_tracering(capsys):
    code, out, _ = run(capsys, "tracering", T1, "--format", "json")
    obj = json.loads(out)
    assert code == 0 and obj["index"] == 78
    assert obj["span"]["basis"] == [[1, 39], [0, 78]]
    assert obj["unital_ring"]["index"] == 39


def test_reduce(capsys):
    code, out, _ = run(capsys, "reduce", T1, "--prime", 11, "--format", "json")
    obj = json.loads(out)
    # inverse-closed generators, deduplicated after reduction
    assert code == 0 and 1 <= len(obj["images"]) <= 4
    assert obj["order"] * obj["index"] == 11 * (11 * 11 - 1)
    _, out, _ = run(capsys, "reduce", T1, "--modulus", 4, "--format", "json")
    assert json.loads(out)["target"] == "O/4O"


def test_reduce_index_matches_table(capsys):
    # the ideal of norm 11 that appears in the table
    indices = set()
    for which in (0, 1):
        _, out, _ = run(capsys, "reduce", T1, "--prime", 11, "--which", which,
                        "--format", "json")
        indices.add(json.loads(out)["index"])
    assert indices == {1, 120}


def test_errors(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(capsys, "density", bad)[0] == 2
    assert run(capsys, "density", tmp_path / "missing.json")[0] == 2
    assert run(capsys, "reduce", T1)[0] == 2
    assert run(capsys, "reduce", T1, "--prime", 2, "--which", 5)[0] == 2
    code, _, err = run(capsys, "table", T1, "--cap", 100)
    assert code == 2 and "--cap" in err
    with pytest.raises(SystemExit):
        main(["table"])


def test_inconclusive_exit(capsys):
    code, _, err = run(capsys, "pfd", DATA / "finite_order.json")
    assert code == 3 and "--allow-inconclusive" in err
    assert run(capsys, "pfd", DATA / "finite_order.json", "--allow-inconclusive")[0] == 0


@pytest.mark.skipif(shutil.which("densesl") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["densesl", "factor", str(DATA / "O7.json"), "11"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and "norm=11" in res.stdout
