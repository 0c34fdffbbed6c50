import math
import random

import pytest

import hybridsail as hs


def test_forward_force_matches_projection():
    rng = random.Random(4)
    for _ in range(1000):
        th, ph = rng.uniform(-7, 7), rng.uniform(-7, 7)
        fx, fy = rng.uniform(-5, 5), rng.uniform(-5, 5)
        wx = fy * math.cos(ph) + fx * math.cos(ph + math.pi / 2)
        wy = fy * math.sin(ph) + fx * math.sin(ph + math.pi / 2)
        expected = wx * math.sin(th) + wy * math.cos(th)
        assert hs.forward_force(th, ph, fx, fy) == pytest.approx(expected, abs=1e-12)


def test_savings_examples():
    assert hs.savings_percent(1172, 1446) == pytest.approx(23.38, abs=0.005)
    assert hs.savings_percent(1172, 1275) == pytest.approx(8.79, abs=0.005)
    with pytest.raises(ValueError):
        hs.savings_percent(0, 1)


def test_pid_integrates_constant_error():
    pid = hs.Pid()
    for k in range(1, 11):
        u = pid.step(10.0, 0.1)
        assert u == pytest.approx(0.2 * 10 + 0.1 * 10 * 0.1 * k, abs=1e-9)
    for _ in range(40):
        pid.step(10.0, 0.1)
    assert pid.integral == pytest.approx(10.0)
    assert abs(pid.rudder(1000.0)) == 40.0


def test_config_round_trip_and_errors():
    cfg = hs.Config()
    cfg.seed = 42
    text = cfg.dump()
    assert hs.Config.parse(text).dump() == text
    with pytest.raises(hs.ConfigError):
        hs.Config.parse("[mission]\ntheta_setting = 95\n")
    with pytest.raises(hs.ConfigError):
        hs.Config.parse("[nope]\n")


def test_cruise_is_deterministic_and_consistent():
    cfg = hs.Config()
    a = hs.run_cruise(cfg, 45.0, loops=1, seed=3)
    b = hs.run_cruise(cfg, 45.0, loops=1, seed=3)
    assert a["x"] == b["x"] and a["total_energy"] == b["total_energy"]
    assert not a["timed_out"]
    assert len(a["loops"]) == 1
    assert a["loops"][0]["energy"] == pytest.approx(a["total_energy"], rel=1e-9)
    assert all(c2 >= c1 for c1, c2 in zip(a["cumulative"], a["cumulative"][1:]))


def test_heading_step_settles():
    r = hs.run_heading_step(hs.Config())
    assert 0 <= r["time_within_10"] <= 10
    assert r["overshoot"] <= 5
    assert abs(r["final_error"]) <= 2


def test_small_sweep():
    rep = hs.run_sweep(hs.Config(), thetas=[40.0, 50.0], loops=1, seeds=[1])
    assert [r["theta"] for r in rep["rows"]] == [40.0, 50.0]
    assert rep["best_theta"] in (40.0, 50.0)
