#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lbmp/lbp_graph.hpp"
#include "lbmp/scenario.hpp"

namespace lbmp {

struct TimeInterval {
  double a = 0.0;
  double b = 0.0;
};

// Sorted disjoint reachable intervals per line segment (all k
// sub-segments of a line segment share one list) plus dedicated lists
// for the start and goal points.
class IntervalTable {
 public:
  IntervalTable() = default;
  IntervalTable(std::vector<std::vector<TimeInterval>> per_line_segment,
                std::vector<TimeInterval> start_intervals, std::vector<TimeInterval> goal_intervals,
                int k, VertexId start_vertex, double horizon, double dt)
      : per_ls_(std::move(per_line_segment)),
        start_(std::move(start_intervals)),
        goal_(std::move(goal_intervals)),
        k_(k),
        start_vertex_(start_vertex),
        horizon_(horizon),
        dt_(dt) {}

  std::span<const TimeInterval> vertex_intervals(VertexId v) const {
    if (v == start_vertex_) return start_;
    if (v == start_vertex_ + 1) return goal_;
    return per_ls_[static_cast<std::size_t>(v) / k_];
  }
  std::span<const TimeInterval> line_segment_intervals(LineSegmentId ls) const {
    return per_ls_[static_cast<std::size_t>(ls)];
  }

  int line_segment_count() const { return static_cast<int>(per_ls_.size()); }
  double horizon() const { return horizon_; }
  double sample_step() const { return dt_; }

  // Line segments are independent of k, so one table serves every k at
  // the same n; this re-targets the vertex-id mapping to another graph.
  IntervalTable rebind(const LbpGraph& g) const {
    if (g.line_segment_count() != line_segment_count()) {
      throw std::invalid_argument("IntervalTable::rebind: line segment count mismatch");
    }
    IntervalTable out(*this);
    out.k_ = g.k();
    out.start_vertex_ = g.start_vertex();
    return out;
  }

 private:
  std::vector<std::vector<TimeInterval>> per_ls_;
  std::vector<TimeInterval> start_, goal_;
  int k_ = 1;
  VertexId start_vertex_ = 0;
  double horizon_ = 0.0;
  double dt_ = 0.0;
};

// Largest waypoint-to-waypoint speed over all obstacle trajectories.
double obstacle_max_speed(const Scenario& scenario);

// Default coverage sampling step: a twentieth of a cell per obstacle
// step, never coarser than horizon/1e4.
double default_sample_step(const Scenario& scenario, int n);

// Samples segment coverage at t = 0, dt, 2dt, ..., T per line segment.
// A maximal run of two or more covered samples t_i..t_j becomes the
// non-reachable open interval (t_i, t_j); reachable intervals are the
// closed complement. A single isolated covered sample is dropped, so
// sampling error only enlarges the reachable set.
IntervalTable compute_reachable_intervals(const LbpGraph& g, const Scenario& scenario, double dt);

// First interval whose end admits t_ready, with arrival max(start,
// t_ready); empty when no interval ends at or after t_ready within the
// horizon.
std::optional<std::pair<int, double>> first_interval_reaching(const IntervalTable& table,
                                                              VertexId v, double t_ready);

// Per-grid-cell safe intervals for feasible planning: a sample is unsafe
// when the cell center is within `inflation` of the obstacle union, and
// safe runs are trimmed inward by dt (workspace-time boundary samples
// keep their endpoint).
struct SafeIntervalGrid {
  int grid_n = 0;
  double cell = 0.0;   // grid cell edge length
  double horizon = 0.0;
  double dt = 0.0;
  std::vector<std::vector<TimeInterval>> safe;  // indexed iy * grid_n + ix

  Vec2 center(int ix, int iy) const { return {(ix + 0.5) * cell, (iy + 0.5) * cell}; }
  const std::vector<TimeInterval>& at(int ix, int iy) const {
    return safe[static_cast<std::size_t>(iy) * grid_n + ix];
  }
};

SafeIntervalGrid compute_safe_intervals_grid(int grid_n, const Scenario& scenario, double dt,
                                             double inflation);

}  // namespace lbmp
