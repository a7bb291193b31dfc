from __future__ import annotations

import json
import subprocess
import sys

import pytest

from kscatter.cli import SCHEMA_VERSION, main, run
from kscatter.config import Config, load_config


def ok(argv, cfg=None):
    code, out = run(argv, cfg)
    assert code == 0, argv
    data = json.loads(out)
    assert data["schema_version"] == SCHEMA_VERSION
    return data


def test_analyze_l():
    rep = ok(["analyze", "L"])["report"]
    assert rep["weakly_kappa_dense"] and rep["wf_kappa"] and rep["hier"]["in_h"]


def test_analyze_two_block_witness():
    rep = ok(["analyze", "lsum(ac(2); k, ac(w))"])["report"]
    assert rep["fac"] is False and rep["kappa_ac"] is True and rep["weakly_kappa_scattered"]


def test_rank_kinds():
    r = ok(["rank", "--kind", "hausdorff", "ord(w^2)"])
    assert r["rank"]["cnf"] == "2" and r["literal_iterations"] == 2
    r = ok(["rank", "--kind", "antichain", "fin(4; 0<2, 1<2, 1<3)"])
    assert r["exact"] and r["rank"]["cnf"] == "2"
    r = ok(["rank", "--kind", "antichain", "--variant", "width", "sum(ac(2), w)"])
    assert r["rank"]["cnf"] == "2"
    assert ok(["rank", "--kind", "antichain", "ac(w)"])["fac"] is False
    r = ok(["rank", "--kind", "hierarchy", "sum(k, k*)"])
    assert r["rank"]["cnf"] == "2" and r["hierarchy"]["status"] == "in"


def test_condense_verb():
    r = ok(["condense", "--mode", "h", "sum(Q, k)"])
    assert r["quotient"] == "Q" and r["problems"] == []
    assert all(row["class_term"] == "k" for row in r["class_map"])
    r = ok(["condense", "--mode", "finite", "sum(w, w)"])
    assert r["quotient"] == "w"
    r = ok(["condense", "--mode", "kappa", "limsum(1, sum(k, k*))"])
    assert r["status"] == "indeterminate"


def test_sample_and_dot(tmp_path):
    dot = tmp_path / "s.dot"
    r = ok(["sample", "sum(ac(2), w)", "-n", "6", "--seed", "1", "--dot", str(dot)])
    assert len(r["sample"]["addresses"]) == 6
    assert dot.read_text().startswith("digraph")
    tree = tmp_path / "t.dot"
    ok(["analyze", "L0", "--dot", str(tree)])
    assert "sum" in tree.read_text()


def test_no_dot_without_flag(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    ok(["analyze", "fin(3; 0<1)"])
    assert list(tmp_path.iterdir()) == []


def test_gen_dense():
    r = ok(["gen-dense", "--rounds", "2", "--bound", "2"])
    assert r["size"] == 11 and len(r["stage"]["trace"]) == 9
    assert len(r["stage_filtered_descending"]) >= 2


def test_examples():
    r = ok(["examples"])
    assert set(r["named"]) == {"L0", "L1", "L2", "L3", "L"}
    assert len(r["finite_posets"]) == 10


@pytest.mark.parametrize("argv", [["analyze", "sum(w,"], ["analyze"], ["bogus"],
                                  ["rank", "--kind", "hausdorff", "Q"], ["condense", "ac(2)"],
                                  ["gen-dense", "--rounds", "99"], ["sample", "w", "-n", "1000"],
                                  ["check", "nosuch"], ["gen-dense", "--rounds", "1", "--bound", "0"]])
def test_usage_errors_exit_2(argv):
    assert run(argv)[0] == 2


def test_check_suites_pass():
    for suite in ("examples", "hierarchy", "roundtrip", "sampler", "dense"):
        r = ok(["check", suite])
        assert r["passed"]


def test_check_failure_exit_1(monkeypatch):
    from kscatter import checks

    def broken(cfg):
        s = checks.SuiteResult("broken")
        s.prop("always_fails").expect(False, {"term": "w", "addresses": ["0"]})
        return s

    monkeypatch.setitem(checks.SUITES, "broken", broken)
    code, out = run(["check", "broken"])
    assert code == 1
    data = json.loads(out)
    assert data["results"][0]["properties"][0]["counterexamples"] == [{"term": "w", "addresses": ["0"]}]


def test_config_file(tmp_path):
    cfg = tmp_path / "caps.cfg"
    cfg.write_text("# caps\nmax_rounds = 1\nkappa = w^3\n")
    assert load_config(cfg) == Config(max_rounds=1, kappa="w^3")
    assert run(["--config", str(cfg), "gen-dense", "--rounds", "2"])[0] == 2
    r = ok(["--config", str(cfg), "sample", "k", "-n", "3"])
    assert "w^3" in r["sample"]["instantiation"]
    bad = tmp_path / "bad.cfg"
    bad.write_text("nonsense = 1\n")
    assert run(["--config", str(bad), "examples"])[0] == 2


def test_main_writes_stdout(capsys):
    assert main(["analyze", "w"]) == 0
    assert json.loads(capsys.readouterr().out)["term"] == "w"


def test_module_entry_point_is_byte_deterministic():
    cmd = [sys.executable, "-m", "kscatter", "sample", "L", "-n", "7", "--seed", "11"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a


def test_check_all_clean_build():
    code, out = run(["check", "all"])
    data = json.loads(out)
    assert code == 0 and data["passed"]
    assert {r["suite"] for r in data["results"]} >= {"finite", "condense", "dense", "sampler"}
