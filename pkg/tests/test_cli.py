from __future__ import annotations

import json
import subprocess
import sys

import pytest

from iterline import divalent
from iterline.cli import main
from iterline.formats import encode_graph6
from iterline.graph import bowtie_graph, cycle_graph, double_star_tree, petersen_graph


@pytest.fixture
def g6file(tmp_path):
    def make(*graphs, name="in.g6"):
        p = tmp_path / name
        p.write_text("".join(encode_graph6(g) + "\n" for g in graphs))
        return str(p)

    return make


def lines(capsys) -> list[dict]:
    return [json.loads(x) for x in capsys.readouterr().out.splitlines()]


def test_analyze(g6file, capsys, tmp_path):
    dot = tmp_path / "g.dot"
    assert main(["analyze", "-i", g6file(double_star_tree(), cycle_graph(5)), "--dot", str(dot)]) == 0
    fig, c5 = lines(capsys)
    assert fig["divalent"]["ell0"] == 2 and fig["divalent"]["d_tilde_formula"] == 3
    assert c5["class"] == "Cycle" and c5["triangular"] == "not-applicable"
    assert dot.read_text().count("graph G") == 2


def test_tower_json_lines(g6file, capsys):
    assert main(["tower", "-i", g6file(double_star_tree()), "--depth", "3"]) == 0
    rows = lines(capsys)
    assert [r["min_degree"] for r in rows][:3] == [1, 2, 2]
    assert rows[3]["min_degree"] >= 3
    assert [r["vertices"] for r in rows][:3] == [6, 5, 6]


def test_tower_respects_vertex_cap(g6file, capsys):
    assert main(["tower", "-i", g6file(petersen_graph()), "--depth", "5", "--max-vertices", "100"]) == 0
    assert max(r["vertices"] for r in lines(capsys)) <= 100


def test_dtilde_audit_writes_counterexamples(g6file, capsys, tmp_path, monkeypatch):
    out = tmp_path / "ce.g6"
    path = g6file(double_star_tree(), bowtie_graph())
    assert main(["dtilde", "--audit", "-i", path, "--counterexamples", str(out)]) == 0
    assert not out.exists()
    capsys.readouterr()
    monkeypatch.setattr(divalent, "d_tilde_formula", lambda g, profile=None: 99)
    assert main(["dtilde", "--audit", "-i", path, "--counterexamples", str(out)]) == 1
    assert out.read_text().split() == [encode_graph6(double_star_tree()), encode_graph6(bowtie_graph())]


def test_index_commands(g6file, capsys):
    path = g6file(petersen_graph())
    assert main(["index", "tk", "--k", "2", "-i", path]) == 0
    assert main(["index", "hs", "--s", "0", "-i", path]) == 0
    assert main(["index", "ist", "--s", "1", "-i", path]) == 0
    assert main(["index", "s", "-i", path]) == 0
    tk, hs, ist, s = lines(capsys)
    assert (tk["exact"], tk["bound"]) == (2, 2)
    assert (hs["value"], hs["bound"]) == (1, 2)
    assert ist["index"] == "i_1,0" and ist["value"] <= ist["bound"]
    assert s["index"] == "s"


def test_index_undetermined_exit_code(g6file, capsys):
    assert main(["index", "hs", "--s", "1", "-i", g6file(double_star_tree()), "--oracle-vertex-cap", "7"]) == 3


def test_oracle_command(g6file, capsys):
    assert main(["oracle", "hamiltonian", "-i", g6file(petersen_graph())]) == 0
    assert main(["oracle", "st-supereulerian", "--t", "1", "-i", g6file(cycle_graph(5))]) == 0
    ham, st = lines(capsys)
    assert ham["verdict"] is False and st["verdict"] is False
    assert st["counterexample"] == {"X": [], "Y": [0]}
    assert "elapsed" not in ham


def test_verify_small_suite(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["verify", "--suite", "eq6", "--seed", "3", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["schema"] == 1
    assert rep["config"]["seed"] == 3 and rep["config"]["suites"] == ["eq6"]
    assert rep["summary"]["fail"] == 0


def test_verify_csv(tmp_path, g6file, capsys):
    path = g6file(double_star_tree(), petersen_graph(), name="c.g6")
    assert main(["verify", "--suite", "eq4-audit,eq6", "--corpus", path, "--csv"]) == 0
    rows = capsys.readouterr().out.splitlines()
    assert rows[0] == "suite,graph,serialized,status"
    assert any(r.startswith("eq6,c:1,") for r in rows)


def test_env_caps_and_flags_win(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("ITERLINE_MAX_DEPTH", "3")
    out = tmp_path / "r.json"
    main(["verify", "--suite", "eq6", "--out", str(out)])
    assert json.loads(out.read_text())["config"]["caps"]["max_depth"] == 3
    main(["verify", "--suite", "eq6", "--out", str(out), "--max-depth", "4"])
    assert json.loads(out.read_text())["config"]["caps"]["max_depth"] == 4


def test_usage_and_parse_errors(tmp_path, capsys):
    bad = tmp_path / "bad.g6"
    bad.write_text("C~\nC\x7f\n")
    assert main(["analyze", "-i", str(bad)]) == 2
    assert "line 2" in capsys.readouterr().err
    assert main(["verify", "--suite", "nope"]) == 2
    assert "valid suites" in capsys.readouterr().err
    assert main(["tower", "-i", str(bad), "--depth", "0"]) == 2
    assert main(["verify", "--max-depth", "0", "--suite", "eq6"]) == 2
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == 2


def test_graph_outside_class_is_usage_error(g6file, capsys):
    assert main(["dtilde", "-i", g6file(cycle_graph(5))]) == 2
    assert "Cycle" in capsys.readouterr().err


def test_gen(capsys):
    assert main(["gen", "b-family", "--max-vertices", "10"]) == 0
    assert len(capsys.readouterr().out.split()) == 4
    assert main(["gen", "named", "--names"]) == 0
    assert "petersen" in capsys.readouterr().out
    assert main(["gen", "random", "--seed", "5", "--count", "2"]) == 0
    assert len(capsys.readouterr().out.split()) == 10


def test_stdin_and_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "iterline", "tower", "--depth", "1"],
                          input="C~\n", capture_output=True, text=True, check=True)
    first = json.loads(proc.stdout.splitlines()[1])
    assert first["vertices"] == 6 and first["min_degree"] == 4


def test_stdin_edge_list_is_detected(monkeypatch, capsys):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO("# triangle, one doubled side, a pendant\n4 5\n0 1\n0 1\n1 2\n2 0\n2 3\n"))
    assert main(["tower", "--depth", "1"]) == 0
    levels = lines(capsys)
    assert (levels[0]["vertices"], levels[0]["edges"]) == (4, 5)
    assert levels[1]["vertices"] == 5
