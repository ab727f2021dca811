#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lbmp/intervals.hpp"
#include "lbmp/scenario.hpp"

namespace lbmp {

// Visibility graph over the static obstacles only (dynamic obstacles are
// ignored, which keeps the shortest path a valid lower bound). Nodes are
// the start, the goal, and static bar endpoints / polygon vertices
// clipped to the workspace; edges join node pairs whose straight
// connection neither crosses a static bar nor penetrates a static
// polygon interior (grazing a tip is allowed).
struct VisibilityGraph {
  std::vector<Vec2> nodes;  // [0] = start, [1] = goal
  std::vector<std::vector<std::pair<int, double>>> adjacency;
};

VisibilityGraph build_visibility_graph(const Scenario& scenario);

struct BaselineResult {
  bool reachable = false;
  double cost = 0.0;  // shortest path length / v_max; +inf when disconnected
  std::vector<Vec2> path;
};

BaselineResult baseline_lower_bound(const Scenario& scenario);

struct SippParams {
  int grid_n = 40;
  double dt = -1.0;         // < 0: derived from the scenario
  double inflation = -1.0;  // < 0: half cell diagonal plus obstacle drift per dt
};

// Safe-interval search over the 8-connected grid of cell centers with an
// initial leg from the start and a final leg to the goal. Returned
// trajectories pass validate_trajectory with the same dt.
std::optional<RobotTrajectory> sipp_plan(const Scenario& scenario, const SippParams& params = {});

struct RrtParams {
  double step = 0.1;
  int max_iters = 30000;
  double goal_bias = 0.05;
  double wait_prob = 0.1;
  double dt_check = -1.0;  // < 0: derived from the scenario
};

// Space-time tree rooted at (start, 0); motions run at exactly v_max and
// nodes may also be extended by pure waits. Deterministic for a fixed
// seed.
std::optional<RobotTrajectory> rrt_plan(const Scenario& scenario, std::uint64_t seed,
                                        const RrtParams& params = {});

// Endpoint, speed-bound and sampled collision checks for a candidate
// feasible trajectory.
bool validate_trajectory(const Scenario& scenario, const RobotTrajectory& traj, double dt_check);

// Default time resolution for sampled collision checks.
double default_check_step(const Scenario& scenario);

}  // namespace lbmp
