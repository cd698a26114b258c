import pytest

import dynex


def test_default_run_explores():
    m = dynex.run(dynex.default_config())
    assert m["status"] == "all_exp"
    assert m["explored"]
    assert m["visited"] == 5
    assert m["move_bound_ok"]


def test_run_is_deterministic(tmp_path):
    cfg = {"n": 6, "k": 9, "p": 1, "seed": 7}
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    ma = dynex.run(cfg, str(a))
    mb = dynex.run(cfg, str(b))
    assert ma == mb
    assert a.read_bytes() == b.read_bytes()
    rep = dynex.replay(str(a))
    assert rep["ok"]


def test_replay_flags_tampering(tmp_path):
    path = tmp_path / "t.jsonl"
    dynex.run({"n": 5, "k": 7, "p": 1}, str(path))
    lines = path.read_text().splitlines()
    lines[1] = lines[1].replace('"round":0', '"round":9')
    path.write_text("\n".join(lines) + "\n")
    rep = dynex.replay(str(path))
    assert not rep["ok"]
    assert rep["divergence_line"] == 2


def test_impossibility_construction():
    m = dynex.run(
        {
            "n": 5,
            "k": 6,
            "p": 1,
            "adversary": "clique_pendant",
            "algorithm": "greedy",
            "max_rounds": 300,
        }
    )
    assert m["status"] == "impossibility_hold"
    assert not m["target_visited"]


def test_bad_config_raises():
    with pytest.raises(ValueError):
        dynex.run({"n": 2})
    with pytest.raises(ValueError):
        dynex.run({"bogus": 1})


def test_budget():
    assert dynex.budget(7, 5) == 1
    assert dynex.budget(19, 8) == 2


def test_snapshot_and_suites():
    s = dynex.generate_snapshot(6, seed=3, density=0.5)
    assert s["n"] == 6
    assert len(s["ports"]) == 6
    names = dynex.verify_suites()
    assert "ports" in names and "lemma-key" in names
    assert dynex.verify("ports")["pass"]
