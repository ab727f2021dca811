#include "lbmp/report.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "json.hpp"
#include "lbmp/baselines.hpp"
#include "lbmp/intervals.hpp"
#include "lbmp/lbp_graph.hpp"

namespace lbmp {

std::optional<double> optimality_gap(double upper, double lower) {
  if (!(lower > 0.0) || upper < lower) return std::nullopt;
  return (upper - lower) / lower;
}

std::optional<double> BoundReport::best_lower_bound() const {
  std::optional<double> best;
  for (const auto& lb : lower_bounds) {
    if (!lb.solved) continue;
    if (!best || lb.cost > *best) best = lb.cost;
  }
  return best;
}

std::optional<double> BoundReport::best_valid_upper_bound() const {
  std::optional<double> best;
  for (const auto& ub : upper_bounds) {
    if (!ub.found || !ub.valid) continue;
    if (!best || ub.cost < *best) best = ub.cost;
  }
  return best;
}

namespace {

std::string lower_label(const LowerBoundEntry& lb) {
  if (lb.method == "baseline") return "baseline";
  std::ostringstream ss;
  ss << "lb_astar(n=" << lb.n << ",k=" << lb.k << ",ec=" << (lb.expansion_constraint ? "on" : "off")
     << ")";
  return ss.str();
}

std::string upper_label(const UpperBoundEntry& ub) {
  if (ub.planner == "rrt") return "rrt(seed=" + std::to_string(ub.seed) + ")";
  return ub.planner;
}

}  // namespace

std::string BoundReport::to_json() const {
  nlohmann::ordered_json j;
  j["scenario"] = scenario_id;
  j["lower_bounds"] = nlohmann::ordered_json::array();
  for (const auto& lb : lower_bounds) {
    nlohmann::ordered_json e;
    e["method"] = lb.method;
    if (lb.method != "baseline") {
      e["n"] = lb.n;
      e["k"] = lb.k;
      e["dt"] = lb.dt;
      e["expansion_constraint"] = lb.expansion_constraint;
      e["expansions"] = lb.expansions;
    }
    e["solved"] = lb.solved;
    if (lb.solved) e["cost"] = lb.cost;
    e["wall_ms"] = lb.wall_ms;
    j["lower_bounds"].push_back(std::move(e));
  }
  j["upper_bounds"] = nlohmann::ordered_json::array();
  for (const auto& ub : upper_bounds) {
    nlohmann::ordered_json e;
    e["planner"] = ub.planner;
    if (ub.planner == "rrt") e["seed"] = ub.seed;
    e["found"] = ub.found;
    if (ub.found) {
      e["valid"] = ub.valid;
      e["cost"] = ub.cost;
    }
    e["wall_ms"] = ub.wall_ms;
    j["upper_bounds"].push_back(std::move(e));
  }
  j["gaps"] = nlohmann::ordered_json::array();
  for (const auto& gap : gaps) {
    j["gaps"].push_back({{"upper", gap.upper}, {"lower", gap.lower}, {"gap", gap.gap}});
  }
  if (const auto best = best_lower_bound()) j["best_lower_bound"] = *best;
  if (const auto best = best_valid_upper_bound()) j["best_upper_bound"] = *best;
  if (const auto headline = headline_comparison()) {
    j["headline"] = {{"upper", headline->upper},
                     {"gap_vs_relaxed_bound", headline->gap_vs_relaxed},
                     {"gap_vs_baseline", headline->gap_vs_baseline}};
  }
  return j.dump(2) + "\n";
}

std::string BoundReport::to_text() const {
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(6);
  ss << "scenario: " << scenario_id << "\n";
  ss << "lower bounds:\n";
  for (const auto& lb : lower_bounds) {
    ss << "  " << lower_label(lb) << ": ";
    if (lb.solved) {
      ss << lb.cost;
    } else {
      ss << "no_path";
    }
    if (lb.method != "baseline") ss << "  (expansions " << lb.expansions << ")";
    ss << "\n";
  }
  ss << "upper bounds:\n";
  for (const auto& ub : upper_bounds) {
    ss << "  " << upper_label(ub) << ": ";
    if (!ub.found) {
      ss << "not found";
    } else if (!ub.valid) {
      ss << "INVALID";
    } else {
      ss << ub.cost;
    }
    ss << "\n";
  }
  ss << "optimality gap estimates:\n";
  for (const auto& gap : gaps) {
    ss << "  " << gap.upper << " vs " << gap.lower << ": " << 100.0 * gap.gap << "%\n";
  }
  if (const auto headline = headline_comparison()) {
    ss << "headline: " << headline->upper << " gap " << 100.0 * headline->gap_vs_relaxed
       << "% against the relaxed bound vs " << 100.0 * headline->gap_vs_baseline
       << "% against the baseline\n";
  }
  return ss.str();
}

std::optional<BoundReport::Headline> BoundReport::headline_comparison() const {
  // Best feasible cost against the best relaxed bound and the static
  // baseline.
  std::optional<double> baseline;
  std::optional<double> relaxed;
  for (const auto& lb : lower_bounds) {
    if (!lb.solved) continue;
    if (lb.method == "baseline") {
      baseline = lb.cost;
    } else if (!relaxed || lb.cost > *relaxed) {
      relaxed = lb.cost;
    }
  }
  const auto upper = best_valid_upper_bound();
  if (!baseline || !relaxed || !upper) return std::nullopt;
  const auto g_rel = optimality_gap(*upper, *relaxed);
  const auto g_base = optimality_gap(*upper, *baseline);
  if (!g_rel || !g_base) return std::nullopt;
  std::string label = "upper";
  for (const auto& ub : upper_bounds) {
    if (ub.found && ub.valid && ub.cost == *upper) {
      label = ub.planner;
      break;
    }
  }
  return Headline{label, *g_rel, *g_base};
}

BoundReport compute_report(const Scenario& scenario, const std::string& scenario_id,
                           const ReportConfig& config) {
  BoundReport report;
  report.scenario_id = scenario_id;

  const auto ms_since = [](auto t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  {
    const auto t0 = std::chrono::steady_clock::now();
    const BaselineResult base = baseline_lower_bound(scenario);
    LowerBoundEntry lb;
    lb.method = "baseline";
    lb.solved = base.reachable;
    lb.cost = base.cost;
    lb.wall_ms = ms_since(t0);
    report.lower_bounds.push_back(lb);
  }

  const double dt = config.dt > 0.0 ? config.dt : default_sample_step(scenario, config.n);
  const LbpGraph graph = build_graph(scenario, config.n, config.k);
  const IntervalTable table = compute_reachable_intervals(graph, scenario, dt);
  for (const bool constraint : {false, true}) {
    SearchOptions opts;
    opts.expansion_constraint = constraint;
    const SearchResult res = solve(graph, table, opts);
    LowerBoundEntry lb;
    lb.method = "lb_astar";
    lb.n = config.n;
    lb.k = config.k;
    lb.dt = dt;
    lb.expansion_constraint = constraint;
    lb.solved = res.status == SearchStatus::Solved;
    lb.cost = res.cost;
    lb.expansions = res.stats.expansions;
    lb.wall_ms = res.stats.wall_ms;
    report.lower_bounds.push_back(lb);
  }

  const double dt_check = default_check_step(scenario);
  if (config.run_sipp) {
    const auto t0 = std::chrono::steady_clock::now();
    SippParams params;
    params.grid_n = config.grid_n;
    const auto traj = sipp_plan(scenario, params);
    UpperBoundEntry ub;
    ub.planner = "sipp";
    ub.found = traj.has_value();
    if (traj) {
      ub.valid = validate_trajectory(scenario, *traj, dt_check);
      ub.cost = traj->total_cost;
    }
    ub.wall_ms = ms_since(t0);
    report.upper_bounds.push_back(ub);
  }
  if (config.run_rrt) {
    for (const std::uint64_t seed : config.rrt_seeds) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto traj = rrt_plan(scenario, seed);
      UpperBoundEntry ub;
      ub.planner = "rrt";
      ub.seed = seed;
      ub.found = traj.has_value();
      if (traj) {
        ub.valid = validate_trajectory(scenario, *traj, dt_check);
        ub.cost = traj->total_cost;
      }
      ub.wall_ms = ms_since(t0);
      report.upper_bounds.push_back(ub);
    }
  }

  // Ordering guardrail: no lower bound may exceed a validated upper
  // bound.
  for (const auto& lb : report.lower_bounds) {
    if (!lb.solved) continue;
    for (const auto& ub : report.upper_bounds) {
      if (!ub.found || !ub.valid) continue;
      if (lb.cost > ub.cost + 1e-9) {
        throw InvariantViolation("lower bound " + lower_label(lb) + " = " +
                                 std::to_string(lb.cost) + " exceeds upper bound " +
                                 upper_label(ub) + " = " + std::to_string(ub.cost));
      }
      const auto gap = optimality_gap(ub.cost, lb.cost);
      if (gap) report.gaps.push_back({upper_label(ub), lower_label(lb), *gap});
    }
  }
  return report;
}

}  // namespace lbmp
