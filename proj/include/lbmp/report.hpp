#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lbmp/scenario.hpp"
#include "lbmp/search.hpp"

namespace lbmp {

struct InvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// (C - C') / C' for an upper bound C and a lower bound C'; only defined
// when C >= C' > 0.
std::optional<double> optimality_gap(double upper, double lower);

struct LowerBoundEntry {
  std::string method;  // "lb_astar" or "baseline"
  int n = 0, k = 0;
  double dt = 0.0;
  bool expansion_constraint = false;
  bool solved = false;
  double cost = 0.0;
  std::int64_t expansions = 0;
  double wall_ms = 0.0;
};

struct UpperBoundEntry {
  std::string planner;  // "sipp" or "rrt"
  std::uint64_t seed = 0;
  bool found = false;
  bool valid = false;
  double cost = 0.0;
  double wall_ms = 0.0;
};

struct GapEntry {
  std::string upper;
  std::string lower;
  double gap = 0.0;
};

struct BoundReport {
  std::string scenario_id;
  std::vector<LowerBoundEntry> lower_bounds;
  std::vector<UpperBoundEntry> upper_bounds;
  std::vector<GapEntry> gaps;

  struct Headline {
    std::string upper;
    double gap_vs_relaxed = 0.0;
    double gap_vs_baseline = 0.0;
  };

  std::optional<double> best_lower_bound() const;
  std::optional<double> best_valid_upper_bound() const;
  std::optional<Headline> headline_comparison() const;
  std::string to_json() const;
  std::string to_text() const;
};

struct ReportConfig {
  int n = 20;
  int k = 25;
  double dt = -1.0;  // < 0: derived from the scenario
  int grid_n = 40;
  std::vector<std::uint64_t> rrt_seeds = {1};
  bool run_sipp = true;
  bool run_rrt = true;
};

// Runs the visibility baseline, the relaxed search with the expansion
// constraint both off and on, and the feasible planners, then cross
// checks every lower bound against every validated upper bound. A
// violated ordering throws InvariantViolation instead of emitting a
// report.
BoundReport compute_report(const Scenario& scenario, const std::string& scenario_id,
                           const ReportConfig& config = {});

}  // namespace lbmp
