from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from conftest import DATA
from dicot.cli import main
from dicot.core import make_dicot


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out=out)
    return code, out.getvalue()


def test_partition(tmp_path):
    assert run("partition", "-i", DATA / "d2.json") == (0, "17\n")
    assert run("partition", "-i", DATA / "single.json") == (0, "5\n")
    code, out = run("partition", "-i", DATA / "d2.json", "--timing")
    assert code == 0 and out.startswith("17\n# det time")


def test_partition_prints_reduced_fraction(tmp_path):
    path = tmp_path / "half.json"
    path.write_text(json.dumps(make_dicot(["1/2", "2/4"], [], []).to_json()))
    assert run("partition", "-i", path) == (0, "1/4\n")


def test_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("partition", "-i", bad)[0] == 2
    assert run("partition", "-i", tmp_path / "missing.json")[0] == 2
    loop = tmp_path / "loop.json"
    loop.write_text(json.dumps({"vertices": [{"id": 1, "x": "1"}], "solid": [[1, 1, "1"]], "dashed": []}))
    assert run("partition", "-i", loop)[0] == 2
    assert "self" in capsys.readouterr().err.lower()


def test_verify():
    assert run("verify", "-i", DATA / "d2.json") == (0, "det=17 brute=17 MATCH\n")
    assert run("verify", "-i", DATA / "wheel3.json", "--oracle") == (0, "det=54 brute=54 MATCH\n")
    assert run("verify", "-i", DATA / "big18.json")[0] == 2


def test_verify_random_is_seeded():
    first = run("verify", "--random", 15, "--seed", 9)
    assert first == run("verify", "--random", 15, "--seed", 9)
    assert first == (0, "15/15 MATCH (seed 9)\n")


def test_square():
    code, out = run("square", "-i", DATA / "example3.json", "--pi", DATA / "example3_pi.json")
    assert code == 0 and "25 = 5^2" in out
    code, out = run("square", "-i", DATA / "q22.json", "--pi", DATA / "q22_pi.json")
    assert code == 0 and "9 = 3^2" in out


def test_square_without_adapted_partition(capsys):
    code, _ = run("square", "-i", DATA / "c4_cyclic.json", "--pi", DATA / "c4_pi.json")
    assert code == 3
    assert "no adapted partition" in capsys.readouterr().err


def test_kasteleyn():
    code, out = run("kasteleyn", "-i", DATA / "grid33_planar.json")
    assert code == 0
    assert "coords" in json.loads(out)


def test_family():
    code, out = run("family", "--family", "wheel", "--n", 3)
    assert code == 0 and "Z=54" in out and "agree=yes" in out
    code, out = run("family", "--family", "grid", "--m", 1, "--n", 1, "--emit", "csv")
    assert code == 0 and out.splitlines()[1].startswith("grid,1,1,4,9,")
    code, out = run("family", "--family", "grid_vert", "--m", 3, "--n", 2, "--emit", "json", "--oracle")
    row = json.loads(out)[0]
    assert code == 0 and row["Z"] == "75" and row["brute_force"] == "75"
    assert run("family", "--family", "wheel", "--n", 4)[0] == 2


def test_free_energy():
    assert run("free-energy", "--family", "cycle", "--x", 1, "--a", 1) == (0, "free_energy=0.481211825059603\n")
    code, out = run("free-energy", "--family", "wheel", "--alpha", 4, "--emit", "json")
    assert code == 0 and json.loads(out)[0]["free_energy"].startswith("0.96242365")


def test_module_entry_point_is_deterministic():
    cmd = [sys.executable, "-m", "dicot", "family", "--family", "cycle", "--n", "4", "--emit", "csv"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and b"47" in a


def test_missing_subcommand_exits_with_usage():
    with pytest.raises(SystemExit) as err:
        main([])
    assert err.value.code == 2
