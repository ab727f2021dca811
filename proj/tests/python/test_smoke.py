"""Smoke tests for the python module."""

import json
import math

import pytest

import lbmp


def test_presets_load_and_round_trip():
    scn = lbmp.preset_scenario("exp1")
    assert scn.num_obstacles == 2
    assert scn.start == (0.0, 0.5)
    text = lbmp.save_scenario(scn)
    again = lbmp.load_scenario(text)
    assert lbmp.save_scenario(again) == text


def test_invalid_document_raises():
    with pytest.raises(lbmp.ScenarioError):
        lbmp.load_scenario('{"L": -1}')


def test_graph_size_identity():
    scn = lbmp.preset_scenario("exp2")
    for n, k in [(3, 1), (5, 4), (10, 10)]:
        g = lbmp.build_graph(scn, n, k)
        assert g.vertex_count == 2 * k * (n * n + n) + 2


def test_straight_corridor_bound():
    scn = lbmp.load_scenario(
        json.dumps(
            {
                "L": 1,
                "T": 100,
                "v_max": 0.03,
                "start": [0, 0.5],
                "goal": [1, 0.5],
                "obstacles": [],
            }
        )
    )
    g = lbmp.build_graph(scn, 4, 5)
    table = lbmp.compute_reachable_intervals(g, scn, dt=2.0)
    res = lbmp.solve(g, table, expansion_constraint=False)
    assert res["status"] == "solved"
    assert res["cost"] == pytest.approx((4 / 5) / 0.03, abs=1e-9)


def test_baseline_matches_closed_form():
    res = lbmp.baseline_lower_bound(lbmp.preset_scenario("exp1"))
    assert res["reachable"]
    assert res["cost"] == pytest.approx((0.4 * math.sqrt(2) + 0.6) / 0.03, abs=1e-9)


def test_lower_bound_sits_under_the_feasible_cost():
    scn = lbmp.preset_scenario("exp2")
    g = lbmp.build_graph(scn, 8, 6)
    table = lbmp.compute_reachable_intervals(g, scn)
    lb = lbmp.solve(g, table)
    assert lb["status"] == "solved"

    traj = lbmp.sipp_plan(scn)
    assert traj is not None
    assert lbmp.validate_trajectory(scn, traj["samples"])
    assert lb["cost"] <= traj["cost"] + 1e-9

    gap = lbmp.optimality_gap(traj["cost"], lb["cost"])
    assert gap is not None and gap >= 0.0


def test_rrt_is_deterministic():
    scn = lbmp.preset_scenario("exp2")
    a = lbmp.rrt_plan(scn, seed=4)
    b = lbmp.rrt_plan(scn, seed=4)
    assert a is not None and b is not None
    assert a["samples"] == b["samples"]


def test_report_json():
    scn = lbmp.generate_random_scenario(seed=2, num_obstacles=3, radius=0.1)
    report = json.loads(lbmp.compute_report(scn, "smoke", n=6, k=4))
    assert len(report["lower_bounds"]) == 3
    if "best_lower_bound" in report and "best_upper_bound" in report:
        assert report["best_lower_bound"] <= report["best_upper_bound"] + 1e-9
