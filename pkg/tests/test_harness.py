import json

import numpy as np
import pytest

from prgeom import harness
from prgeom.harness import RunConfig, run_batch


def test_config_roundtrip():
    cfg = RunConfig(check="keylemma", family={"kind": "paley", "params": {"q": 13}}, usize=5,
                    trials=3, seed=9, k=[2], m=[5, 6], variant="over_n2", jobs=2)
    assert RunConfig.from_json(cfg.to_json()) == cfg
    with pytest.raises(ValueError):
        RunConfig.from_json(json.dumps({"nonsense": 1}))


def test_trial_streams_are_independent_of_batch():
    a = harness.trial_rng(7, 3).integers(0, 10**9, size=4)
    b = harness.trial_rng(7, 3).integers(0, 10**9, size=4)
    c = harness.trial_rng(7, 4).integers(0, 10**9, size=4)
    assert np.array_equal(a, b) and not np.array_equal(a, c)


def test_rows_replay_single_trial():
    cfg = RunConfig(check="second-counting", trials=4, seed=3, usize=12, k=[1, 2])
    rows = run_batch(cfg)
    assert [r["trial"] for r in rows] == sorted(r["trial"] for r in rows)
    one = run_batch(RunConfig(check="second-counting", trials=4, seed=3, usize=12, k=[1, 2]))
    assert rows == one
    assert all({"graph_hash", "profile", "check", "status"} <= row.keys() for row in rows)


def test_parallel_matches_serial():
    base = dict(check="path-recursions", trials=6, seed=1, usize=15)
    assert run_batch(RunConfig(**base, jobs=2)) == run_batch(RunConfig(**base, jobs=1))


@pytest.mark.parametrize("check", harness.CHECKS)
def test_every_check_runs(check):
    family = {"kind": "distance_colored", "params": {"q": 5}} if check in ("coverage", "low-degree") else None
    rows = run_batch(RunConfig(check=check, family=family, trials=2, seed=0, k=[1, 2], m=[4]))
    assert rows and harness.exit_code(rows) == 0


def test_adversarial_keylemma():
    rows = run_batch(RunConfig(check="keylemma", variant="over_n2", adversarial=True))
    assert len(rows) == 1 and rows[0]["status"] == "fail"
    assert harness.exit_code(rows) == 1
    assert "flatness" in rows[0]["extra"]
    with pytest.raises(ValueError):
        run_batch(RunConfig(check="mcs", adversarial=True))


def test_unknown_check():
    with pytest.raises(ValueError):
        run_batch(RunConfig(check="nope"))
