"""Certified arrival-time lower bounds for 2D planning among moving obstacles."""

from lbmp._core import (
    IntervalTable,
    LbpGraph,
    Scenario,
    ScenarioError,
    baseline_lower_bound,
    build_graph,
    compute_reachable_intervals,
    compute_report,
    default_sample_step,
    generate_random_scenario,
    load_scenario,
    load_scenario_file,
    optimality_gap,
    preset_scenario,
    rrt_plan,
    save_scenario,
    sipp_plan,
    solve,
    validate_trajectory,
)

__all__ = [
    "IntervalTable",
    "LbpGraph",
    "Scenario",
    "ScenarioError",
    "baseline_lower_bound",
    "build_graph",
    "compute_reachable_intervals",
    "compute_report",
    "default_sample_step",
    "generate_random_scenario",
    "load_scenario",
    "load_scenario_file",
    "optimality_gap",
    "preset_scenario",
    "rrt_plan",
    "save_scenario",
    "sipp_plan",
    "solve",
    "validate_trajectory",
]
