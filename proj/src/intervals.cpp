#include "lbmp/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lbmp/coverage.hpp"
#include "lbmp/util.hpp"

namespace lbmp {

double obstacle_max_speed(const Scenario& scenario) {
  double best = 0.0;
  for (const auto& obs : scenario.obstacles) {
    const auto& wps = obs.trajectory.waypoints;
    for (std::size_t i = 1; i < wps.size(); ++i) {
      const double dt = wps[i].t - wps[i - 1].t;
      if (dt > 0.0) best = std::max(best, distance(wps[i].offset, wps[i - 1].offset) / dt);
    }
  }
  return best;
}

double default_sample_step(const Scenario& scenario, int n) {
  const double cap = scenario.horizon / 1e4;
  const double v_obs = obstacle_max_speed(scenario);
  if (v_obs <= 0.0) return cap;
  const double w = scenario.workspace_size / n;
  return std::min(0.05 * w / v_obs, cap);
}

namespace {

std::vector<double> sample_times(double horizon, double dt) {
  std::vector<double> ts;
  const auto count = static_cast<std::int64_t>(std::floor(horizon / dt));
  ts.reserve(count + 2);
  for (std::int64_t i = 0; i <= count; ++i) ts.push_back(i * dt);
  if (ts.back() < horizon - 1e-12 * std::max(1.0, horizon)) ts.push_back(horizon);
  ts.back() = std::min(ts.back(), horizon);
  return ts;
}

// Covered-sample runs of length >= 2 become open non-reachable
// intervals; the reachable list is the closed complement in [0,T].
std::vector<TimeInterval> intervals_from_samples(const std::vector<char>& covered,
                                                 const std::vector<double>& ts, double horizon) {
  std::vector<TimeInterval> reach;
  double cursor = 0.0;
  std::size_t i = 0;
  const std::size_t m = covered.size();
  while (i < m) {
    if (!covered[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < m && covered[j + 1]) ++j;
    if (j > i) {
      reach.push_back({cursor, ts[i]});
      cursor = ts[j];
    }
    i = j + 1;
  }
  reach.push_back({cursor, horizon});
  return reach;
}

}  // namespace

IntervalTable compute_reachable_intervals(const LbpGraph& g, const Scenario& scenario, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("compute_reachable_intervals: dt must be > 0");
  const double horizon = scenario.horizon;
  const auto ts = sample_times(horizon, dt);

  const int ls_count = g.line_segment_count();
  std::vector<std::vector<TimeInterval>> per_ls(ls_count + 2);
  // Line segments are independent; the two point vertices ride along as
  // pseudo-indices at the end.
  util::parallel_for(ls_count + 2, [&](std::int64_t idx) {
    AxisSegment seg;
    if (idx < ls_count) {
      seg = g.line_segment_geometry(static_cast<LineSegmentId>(idx));
    } else if (idx == ls_count) {
      seg = {g.start_point(), Axis::Horizontal, 0.0};
    } else {
      seg = {g.goal_point(), Axis::Horizontal, 0.0};
    }
    std::vector<char> covered(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
      covered[i] = segment_covered(seg, scenario, ts[i]) ? 1 : 0;
    }
    per_ls[idx] = intervals_from_samples(covered, ts, horizon);
  });

  std::vector<TimeInterval> start_iv = std::move(per_ls[ls_count]);
  std::vector<TimeInterval> goal_iv = std::move(per_ls[ls_count + 1]);
  per_ls.resize(ls_count);
  return IntervalTable(std::move(per_ls), std::move(start_iv), std::move(goal_iv), g.k(),
                       g.start_vertex(), horizon, dt);
}

std::optional<std::pair<int, double>> first_interval_reaching(const IntervalTable& table,
                                                              VertexId v, double t_ready) {
  if (t_ready > table.horizon()) return std::nullopt;
  const auto ivs = table.vertex_intervals(v);
  for (std::size_t j = 0; j < ivs.size(); ++j) {
    if (ivs[j].b >= t_ready) {
      const double arrival = std::max(ivs[j].a, t_ready);
      if (arrival > table.horizon()) return std::nullopt;
      return std::make_pair(static_cast<int>(j), arrival);
    }
  }
  return std::nullopt;
}

SafeIntervalGrid compute_safe_intervals_grid(int grid_n, const Scenario& scenario, double dt,
                                             double inflation) {
  if (grid_n < 1) throw std::invalid_argument("compute_safe_intervals_grid: grid_n must be >= 1");
  if (!(dt > 0.0)) throw std::invalid_argument("compute_safe_intervals_grid: dt must be > 0");
  if (inflation < 0.0) throw std::invalid_argument("compute_safe_intervals_grid: inflation < 0");

  SafeIntervalGrid grid;
  grid.grid_n = grid_n;
  grid.cell = scenario.workspace_size / grid_n;
  grid.horizon = scenario.horizon;
  grid.dt = dt;
  grid.safe.resize(static_cast<std::size_t>(grid_n) * grid_n);

  const auto ts = sample_times(scenario.horizon, dt);
  util::parallel_for(static_cast<std::int64_t>(grid.safe.size()), [&](std::int64_t idx) {
    const int ix = static_cast<int>(idx % grid_n);
    const int iy = static_cast<int>(idx / grid_n);
    const Vec2 p = grid.center(ix, iy);
    auto& out = grid.safe[idx];
    std::size_t i = 0;
    while (i < ts.size()) {
      if (distance_to_union(p, scenario, ts[i]) <= inflation) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j + 1 < ts.size() && distance_to_union(p, scenario, ts[j + 1]) > inflation) ++j;
      // Trim inward except at the workspace-time boundary.
      const double lo = (i == 0) ? 0.0 : ts[i] + dt;
      const double hi = (j + 1 == ts.size()) ? scenario.horizon : ts[j] - dt;
      if (lo <= hi) out.push_back({lo, hi});
      i = j + 1;
    }
  });
  return grid;
}

}  // namespace lbmp
