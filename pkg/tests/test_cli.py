import json
import os
import subprocess
import sys

import pytest

from acyc import graph as gr
from acyc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count_k23(capsys):
    code, out, _ = run(capsys, "count", "--graph", "K2,3", "--json")
    d = json.loads(out)
    assert code == 0
    assert (d["alpha"], d["kappa"], d["delta"], d["bipartite"]) == (46, 7, 4, True)
    assert d["T(1,0)"] == 7 and d["T(2,0)"] == 46


def test_count_k2_text(capsys):
    code, out, _ = run(capsys, "count", "--edges", "1-2")
    assert code == 0
    assert "alpha=2\n" in out and "kappa=1\n" in out and "delta=1\n" in out


def test_input_file_forms(capsys, tmp_path):
    g = gr.k23()
    txt = tmp_path / "k23.txt"
    txt.write_text(gr.to_text(g))
    js = tmp_path / "k23.json"
    js.write_text(gr.to_json(g))
    a = run(capsys, "count", "--input", str(txt), "--json")[1]
    b = run(capsys, "count", "--input", str(js), "--json")[1]
    c = run(capsys, "count", "--edges", ",".join(f"{u + 1}-{v + 1}" for u, v in g.edges), "--json")[1]
    assert a == b == c


def test_classes_schema(capsys):
    code, out, _ = run(capsys, "classes", "--graph", "K2,3")
    d = json.loads(out)
    assert list(d) == ["alpha", "kappa", "delta", "bipartite", "classes"]
    assert len(d["classes"]) == 7 and sum(map(len, d["classes"])) == 46
    code, out, _ = run(capsys, "classes", "--graph", "K2,3", "--kind", "delta")
    assert len(json.loads(out)["classes"]) == 4


def test_classes_dot(capsys):
    code, out, _ = run(capsys, "classes", "--graph", "K2", "--dot")
    assert code == 0 and out.startswith("graph KAPPA {") and out.count(" -- ") == 1


def test_update_graph(capsys):
    code, out, _ = run(capsys, "update-graph", "--graph", "K2,3", "--json")
    assert json.loads(out) == {"1": 12, "2": 24, "4": 6, "6": 2, "12": 2}
    code, out, _ = run(capsys, "update-graph", "--graph", "E3")
    assert out == "size 6: 1\ncomponents: 1\n"


def test_tutte(capsys):
    code, out, _ = run(capsys, "tutte", "--graph", "C4")
    assert out.splitlines()[0] == "T = 1·x^3 + 1·x^2 + 1·x + 1·y"
    code, out, _ = run(capsys, "tutte", "--graph", "C4", "--json")
    assert json.loads(out) == {"3,0": 1, "2,0": 1, "1,0": 1, "0,1": 1}


def test_theta(capsys):
    code, out, _ = run(capsys, "theta", "--graph", "K3", "--edge", "1-3", "--json")
    assert code == 0
    assert json.loads(out) == [{"edge": [1, 3], "kappa_Y": 2, "kappa_Ydel": 1, "kappa_Ycon": 1, "bijective": True}]
    code, out, _ = run(capsys, "theta", "--graph", "C4")
    assert code == 0 and out.count("bijective=true") == 4


def test_verify_single_graph_and_corpus(capsys):
    code, out, _ = run(capsys, "verify", "--graph", "K2,3")
    assert code == 0 and out.endswith("OK\n")
    code, out, _ = run(capsys, "verify", "--max-n", "4", "--json")
    d = json.loads(out)
    assert code == 0 and d["ok"] and d["graphs"] == 1 + 1 + 4 + 38


def test_verify_corrupted_oracle_fails(capsys):
    code, out, _ = run(capsys, "verify", "--max-n", "3", "--corrupt-oracle")
    assert code == 1 and "FAIL tutte_kappa" in out and out.endswith("FAILED\n")


def test_verify_seeded_pivots(capsys):
    a = run(capsys, "verify", "--max-n", "4", "--seed", "7")
    b = run(capsys, "verify", "--max-n", "4", "--seed", "7")
    assert a == b and a[0] == 0


def test_bad_input_exit_code(capsys):
    code, _, err = run(capsys, "count", "--edges", "1-1")
    assert code == 2 and err.startswith("error:")
    code, _, err = run(capsys, "count", "--graph", "Q7")
    assert code == 2
    with pytest.raises(SystemExit):
        main(["count"])


def test_theta_on_bridge_is_an_error(capsys):
    code, _, err = run(capsys, "theta", "--graph", "P3", "--edge", "1-2")
    assert code == 2


def test_max_edges_flag(capsys, monkeypatch):
    monkeypatch.delenv("ACYC_MAX_EDGES", raising=False)
    code, _, err = run(capsys, "count", "--graph", "K4", "--max-edges", "3")
    assert code == 2 and "cap" in err
    assert "ACYC_MAX_EDGES" not in os.environ
    assert run(capsys, "count", "--graph", "K4")[0] == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["count", "--graph", "K2,3"],
        ["classes", "--graph", "C5", "--kind", "delta"],
        ["classes", "--graph", "K2,3", "--dot"],
        ["update-graph", "--graph", "K2,3"],
        ["tutte", "--graph", "K4"],
        ["theta", "--graph", "K4"],
        ["verify", "--max-n", "3"],
    ],
)
def test_subcommands_are_deterministic(argv):
    cmd = [sys.executable, "-m", "acyc.cli", *argv]
    runs = [subprocess.run(cmd, capture_output=True, text=True) for _ in range(2)]
    assert [r.returncode for r in runs] == [0, 0], runs[0].stderr
    assert runs[0].stdout == runs[1].stdout and runs[0].stdout
