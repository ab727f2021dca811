#include "lbmp/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <random>
#include <tuple>

#include "lbmp/coverage.hpp"
#include "lbmp/util.hpp"

namespace lbmp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct StaticShapes {
  std::vector<std::pair<Vec2, Vec2>> bars;        // world frame
  std::vector<std::vector<Vec2>> polygons;        // world frame, CCW
};

StaticShapes collect_static_shapes(const Scenario& scenario) {
  StaticShapes out;
  for (const auto& obs : scenario.obstacles) {
    if (!obs.is_static()) continue;
    const Vec2 offset = obs.trajectory.waypoints.front().offset;
    if (const auto* bar = std::get_if<BarShape>(&obs.shape)) {
      out.bars.emplace_back(bar->a + offset, bar->b + offset);
    } else if (const auto* poly = std::get_if<PolygonShape>(&obs.shape)) {
      std::vector<Vec2> world;
      world.reserve(poly->vertices.size());
      for (Vec2 v : poly->vertices) world.push_back(v + offset);
      out.polygons.push_back(std::move(world));
    }
    // Static discs contribute no visibility nodes and no blocking; the
    // shortest path stays a lower bound either way.
  }
  return out;
}

bool strictly_inside_polygon(const std::vector<Vec2>& poly, Vec2 p) {
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[(i + 1) % poly.size()];
    if (cross(b - a, p - a) <= 1e-12) return false;
  }
  return true;
}

// Sutherland-Hodgman against the workspace box.
std::vector<Vec2> clip_polygon_to_box(const std::vector<Vec2>& poly, double L) {
  std::vector<Vec2> cur = poly;
  const auto clip_halfplane = [&](auto inside, auto intersect) {
    std::vector<Vec2> next;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      const Vec2 a = cur[i];
      const Vec2 b = cur[(i + 1) % cur.size()];
      const bool ia = inside(a);
      const bool ib = inside(b);
      if (ia) next.push_back(a);
      if (ia != ib) next.push_back(intersect(a, b));
    }
    cur = std::move(next);
  };
  clip_halfplane([&](Vec2 p) { return p.x >= 0.0; },
                 [&](Vec2 a, Vec2 b) { const double t = (0.0 - a.x) / (b.x - a.x); return a + (b - a) * t; });
  clip_halfplane([&](Vec2 p) { return p.x <= L; },
                 [&](Vec2 a, Vec2 b) { const double t = (L - a.x) / (b.x - a.x); return a + (b - a) * t; });
  clip_halfplane([&](Vec2 p) { return p.y >= 0.0; },
                 [&](Vec2 a, Vec2 b) { const double t = (0.0 - a.y) / (b.y - a.y); return a + (b - a) * t; });
  clip_halfplane([&](Vec2 p) { return p.y <= L; },
                 [&](Vec2 a, Vec2 b) { const double t = (L - a.y) / (b.y - a.y); return a + (b - a) * t; });
  return cur;
}

bool edge_blocked(const StaticShapes& shapes, Vec2 p, Vec2 q) {
  for (const auto& [a, b] : shapes.bars) {
    if (segments_properly_cross(p, q, a, b)) return true;
  }
  for (const auto& poly : shapes.polygons) {
    if (strictly_inside_polygon(poly, p) || strictly_inside_polygon(poly, q)) return true;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      if (segments_properly_cross(p, q, poly[i], poly[(i + 1) % poly.size()])) return true;
    }
    if (strictly_inside_polygon(poly, (p + q) * 0.5)) return true;
  }
  return false;
}

}  // namespace

VisibilityGraph build_visibility_graph(const Scenario& scenario) {
  const double L = scenario.workspace_size;
  const StaticShapes shapes = collect_static_shapes(scenario);

  VisibilityGraph vg;
  vg.nodes.push_back(scenario.start);
  vg.nodes.push_back(scenario.goal);
  const auto inside_box = [L](Vec2 p) {
    return p.x >= 0.0 && p.x <= L && p.y >= 0.0 && p.y <= L;
  };
  // Bar tips are legitimate grazing points only where the bar actually
  // ends; a bar leaving the workspace offers no passage at the border.
  for (const auto& [a, b] : shapes.bars) {
    if (inside_box(a)) vg.nodes.push_back(a);
    if (inside_box(b)) vg.nodes.push_back(b);
  }
  // Polygon boundaries may be grazed anywhere, so clipping against the
  // box yields valid bend points for shapes that stick out.
  for (const auto& poly : shapes.polygons) {
    for (Vec2 v : clip_polygon_to_box(poly, L)) vg.nodes.push_back(v);
  }

  const int m = static_cast<int>(vg.nodes.size());
  vg.adjacency.resize(m);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (edge_blocked(shapes, vg.nodes[i], vg.nodes[j])) continue;
      const double len = distance(vg.nodes[i], vg.nodes[j]);
      vg.adjacency[i].emplace_back(j, len);
      vg.adjacency[j].emplace_back(i, len);
    }
  }
  return vg;
}

BaselineResult baseline_lower_bound(const Scenario& scenario) {
  const VisibilityGraph vg = build_visibility_graph(scenario);
  const int m = static_cast<int>(vg.nodes.size());
  std::vector<double> dist(m, kInf);
  std::vector<int> prev(m, -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  dist[0] = 0.0;
  open.emplace(0.0, 0);
  while (!open.empty()) {
    const auto [d, u] = open.top();
    open.pop();
    if (d > dist[u]) continue;
    if (u == 1) break;
    for (const auto& [v, len] : vg.adjacency[u]) {
      const double nd = d + len;
      if (nd < dist[v]) {
        dist[v] = nd;
        prev[v] = u;
        open.emplace(nd, v);
      }
    }
  }

  BaselineResult out;
  if (dist[1] == kInf) {
    out.reachable = false;
    out.cost = kInf;
    return out;
  }
  out.reachable = true;
  out.cost = dist[1] / scenario.v_max;
  for (int v = 1; v != -1; v = prev[v]) out.path.push_back(vg.nodes[v]);
  std::reverse(out.path.begin(), out.path.end());
  return out;
}

double default_check_step(const Scenario& scenario) {
  const double v_obs = obstacle_max_speed(scenario);
  const double cap = scenario.horizon / 2000.0;
  if (v_obs <= 0.0) return cap;
  // Obstacle drift per check stays well under a typical feature size.
  return std::min(cap, 0.01 * scenario.workspace_size / v_obs);
}

namespace {

struct SippState {
  int cell = -1;      // iy * grid_n + ix
  int interval = -1;  // index into the cell's safe intervals
};

struct SippNode {
  double f = 0.0;
  double g = 0.0;
  int cell = -1;
  int interval = -1;
};

struct SippOrder {
  bool operator()(const SippNode& a, const SippNode& b) const {
    if (a.f != b.f) return a.f > b.f;
    if (a.g != b.g) return a.g > b.g;
    if (a.cell != b.cell) return a.cell > b.cell;
    return a.interval > b.interval;
  }
};

}  // namespace

std::optional<RobotTrajectory> sipp_plan(const Scenario& scenario, const SippParams& params) {
  if (params.grid_n < 2) throw std::invalid_argument("sipp_plan: grid_n must be >= 2");
  const int gn = params.grid_n;
  const double gc = scenario.workspace_size / gn;
  const double v_obs = obstacle_max_speed(scenario);
  double dt = params.dt;
  if (dt <= 0.0) {
    dt = v_obs > 0.0 ? std::min(0.05 * gc / v_obs, scenario.horizon / 1e4)
                     : scenario.horizon / 1e4;
  }
  double inflation = params.inflation;
  if (inflation < 0.0) inflation = 0.5 * gc * std::numbers::sqrt2 + v_obs * dt;

  const SafeIntervalGrid grid = compute_safe_intervals_grid(gn, scenario, dt, inflation);
  const double v = scenario.v_max;

  auto cell_of = [&](Vec2 p) {
    const int ix = std::clamp(static_cast<int>(std::floor(p.x / gc)), 0, gn - 1);
    const int iy = std::clamp(static_cast<int>(std::floor(p.y / gc)), 0, gn - 1);
    return iy * gn + ix;
  };
  auto center_of = [&](int cell) { return grid.center(cell % gn, cell / gn); };

  const int start_cell = cell_of(scenario.start);
  const int goal_cell = cell_of(scenario.goal);

  std::vector<std::vector<double>> best(static_cast<std::size_t>(gn) * gn);
  std::vector<std::vector<std::pair<SippState, double>>> came(static_cast<std::size_t>(gn) * gn);
  for (int c = 0; c < gn * gn; ++c) {
    best[c].assign(grid.safe[c].size(), kInf);
    came[c].assign(grid.safe[c].size(), {{-1, -1}, 0.0});
  }

  auto heuristic = [&](int cell) {
    const double dx = std::abs((cell % gn) - (goal_cell % gn)) * gc;
    const double dy = std::abs((cell / gn) - (goal_cell / gn)) * gc;
    const double lo = std::min(dx, dy);
    const double hi = std::max(dx, dy);
    return (hi - lo + lo * std::numbers::sqrt2) / v;
  };

  std::priority_queue<SippNode, std::vector<SippNode>, SippOrder> open;

  // Initial leg: wait at the start point, then move to the start cell
  // center arriving inside one of its safe intervals.
  const double d0 = distance(scenario.start, center_of(start_cell)) / v;
  for (std::size_t j = 0; j < grid.safe[start_cell].size(); ++j) {
    const auto iv = grid.safe[start_cell][j];
    const double arrival = std::max(iv.a, d0);
    if (arrival > iv.b || arrival > scenario.horizon) continue;
    const double depart = arrival - d0;
    if (moving_point_collides(scenario.start, 0.0, scenario.start, depart, scenario, dt)) continue;
    if (moving_point_collides(scenario.start, depart, center_of(start_cell), arrival, scenario, dt))
      continue;
    best[start_cell][j] = arrival;
    open.push({arrival + heuristic(start_cell), arrival, start_cell, static_cast<int>(j)});
  }

  static constexpr int kDx[8] = {1, -1, 0, 0, 1, 1, -1, -1};
  static constexpr int kDy[8] = {0, 0, 1, -1, 1, -1, 1, -1};

  std::optional<std::pair<SippState, RobotTrajectory>> goal_hit;
  while (!open.empty() && !goal_hit) {
    const SippNode cur = open.top();
    open.pop();
    if (cur.g > best[cur.cell][cur.interval]) continue;

    if (cur.cell == goal_cell) {
      // Final leg: optionally wait at the center, then run straight to
      // the goal point.
      const auto iv = grid.safe[cur.cell][cur.interval];
      const Vec2 c = center_of(cur.cell);
      const double leg = distance(c, scenario.goal) / v;
      const int tries = 64;
      for (int m = 0; m <= tries; ++m) {
        const double depart = cur.g + (iv.b - cur.g) * (static_cast<double>(m) / tries);
        if (depart + leg > scenario.horizon) break;
        if (moving_point_collides(c, cur.g, c, depart, scenario, dt)) break;
        if (moving_point_collides(c, depart, scenario.goal, depart + leg, scenario, dt)) continue;
        RobotTrajectory tail;
        tail.samples.push_back({depart, c});
        tail.samples.push_back({depart + leg, scenario.goal});
        goal_hit = {{cur.cell, cur.interval}, std::move(tail)};
        break;
      }
      if (goal_hit) break;
    }

    const int ix = cur.cell % gn;
    const int iy = cur.cell / gn;
    const auto cur_iv = grid.safe[cur.cell][cur.interval];
    for (int dir = 0; dir < 8; ++dir) {
      const int nx = ix + kDx[dir];
      const int ny = iy + kDy[dir];
      if (nx < 0 || nx >= gn || ny < 0 || ny >= gn) continue;
      const int nb = ny * gn + nx;
      const double dur = (dir < 4 ? gc : gc * std::numbers::sqrt2) / v;
      for (std::size_t j = 0; j < grid.safe[nb].size(); ++j) {
        const auto nb_iv = grid.safe[nb][j];
        // Depart so the first half of the edge is covered by the current
        // interval and the second half by the target interval.
        const double depart = std::max(cur.g, nb_iv.a - dur / 2.0);
        if (depart + dur / 2.0 > cur_iv.b) continue;
        const double arrival = depart + dur;
        if (arrival > nb_iv.b || arrival > scenario.horizon) continue;
        if (arrival >= best[nb][j]) continue;
        best[nb][j] = arrival;
        came[nb][j] = {{cur.cell, cur.interval}, depart};
        open.push({arrival + heuristic(nb), arrival, nb, static_cast<int>(j)});
      }
    }
  }

  if (!goal_hit) return std::nullopt;

  // Backtrack cell-center waypoints, then stitch: start leg, grid moves
  // with their waits, final leg.
  std::vector<std::tuple<int, int, double, double>> chain;  // cell, interval, arrival, depart
  {
    SippState st = goal_hit->first;
    double depart_next = goal_hit->second.samples.front().t;
    while (st.cell != -1) {
      const double arrival = best[st.cell][st.interval];
      chain.emplace_back(st.cell, st.interval, arrival, depart_next);
      const auto& [prev, depart] = came[st.cell][st.interval];
      depart_next = depart;
      st = prev;
    }
    std::reverse(chain.begin(), chain.end());
  }

  RobotTrajectory traj;
  const double first_arrival = std::get<2>(chain.front());
  const double start_depart = first_arrival - d0;
  traj.samples.push_back({0.0, scenario.start});
  if (start_depart > 0.0) traj.samples.push_back({start_depart, scenario.start});
  for (const auto& [cell, iv, arrival, depart] : chain) {
    const Vec2 c = center_of(cell);
    traj.samples.push_back({arrival, c});
    if (depart > arrival) traj.samples.push_back({depart, c});
  }
  const auto& tail = goal_hit->second.samples;
  traj.samples.push_back(tail.back());
  traj.total_cost = traj.samples.back().t;
  return traj;
}

std::optional<RobotTrajectory> rrt_plan(const Scenario& scenario, std::uint64_t seed,
                                        const RrtParams& params) {
  if (!(params.step > 0.0) || params.max_iters <= 0 || params.goal_bias < 0.0) {
    throw std::invalid_argument("rrt_plan: invalid parameters");
  }
  const double dt_check = params.dt_check > 0.0 ? params.dt_check : default_check_step(scenario);
  const double v = scenario.v_max;
  const double L = scenario.workspace_size;

  struct Node {
    Vec2 p;
    double t;
    int parent;
  };
  std::vector<Node> tree;
  if (point_in_union(scenario.start, scenario, 0.0)) return std::nullopt;
  tree.push_back({scenario.start, 0.0, -1});

  std::mt19937_64 rng(seed);
  auto build_trajectory = [&](int leaf, double t_goal) {
    RobotTrajectory traj;
    std::vector<TimedPoint> rev;
    rev.push_back({t_goal, scenario.goal});
    for (int i = leaf; i != -1; i = tree[i].parent) rev.push_back({tree[i].t, tree[i].p});
    for (auto it = rev.rbegin(); it != rev.rend(); ++it) traj.samples.push_back(*it);
    traj.total_cost = t_goal;
    return traj;
  };

  auto try_goal = [&](int idx) -> std::optional<RobotTrajectory> {
    const double d = distance(tree[idx].p, scenario.goal);
    if (d > params.step) return std::nullopt;
    const double t_goal = tree[idx].t + d / v;
    if (t_goal > scenario.horizon) return std::nullopt;
    if (moving_point_collides(tree[idx].p, tree[idx].t, scenario.goal, t_goal, scenario, dt_check)) {
      return std::nullopt;
    }
    return build_trajectory(idx, t_goal);
  };

  if (auto direct = try_goal(0)) return direct;

  for (int iter = 0; iter < params.max_iters; ++iter) {
    if (util::uniform01(rng) < params.wait_prob) {
      const auto idx = static_cast<int>(util::uniform_index(rng, tree.size()));
      const double wait = params.step / v;
      const double t2 = tree[idx].t + wait;
      if (t2 > scenario.horizon) continue;
      if (moving_point_collides(tree[idx].p, tree[idx].t, tree[idx].p, t2, scenario, dt_check)) {
        continue;
      }
      tree.push_back({tree[idx].p, t2, idx});
      if (auto done = try_goal(static_cast<int>(tree.size()) - 1)) return done;
      continue;
    }

    const Vec2 target = util::uniform01(rng) < params.goal_bias
                            ? scenario.goal
                            : Vec2{util::uniform_in(rng, 0.0, L), util::uniform_in(rng, 0.0, L)};
    int nearest = -1;
    double nearest_d = kInf;
    for (std::size_t i = 0; i < tree.size(); ++i) {
      const double d = distance(tree[i].p, target);
      if (d < nearest_d) {
        nearest_d = d;
        nearest = static_cast<int>(i);
      }
    }
    if (nearest_d < 1e-12) continue;
    const double move = std::min(params.step, nearest_d);
    const Vec2 next = tree[nearest].p + (target - tree[nearest].p) * (move / nearest_d);
    const double t2 = tree[nearest].t + move / v;
    if (t2 > scenario.horizon) continue;
    if (moving_point_collides(tree[nearest].p, tree[nearest].t, next, t2, scenario, dt_check)) {
      continue;
    }
    tree.push_back({next, t2, nearest});
    if (auto done = try_goal(static_cast<int>(tree.size()) - 1)) return done;
  }
  return std::nullopt;
}

bool validate_trajectory(const Scenario& scenario, const RobotTrajectory& traj, double dt_check) {
  if (traj.samples.empty()) throw std::invalid_argument("validate_trajectory: empty trajectory");
  constexpr double kPosTol = 1e-9;
  const auto& first = traj.samples.front();
  const auto& last = traj.samples.back();
  if (distance(first.p, scenario.start) > kPosTol) return false;
  if (distance(last.p, scenario.goal) > kPosTol) return false;
  if (first.t < 0.0 || last.t > scenario.horizon) return false;
  for (std::size_t i = 1; i < traj.samples.size(); ++i) {
    const auto& a = traj.samples[i - 1];
    const auto& b = traj.samples[i];
    const double span = b.t - a.t;
    if (span < 0.0) return false;
    const double d = distance(a.p, b.p);
    if (span == 0.0) {
      if (d > kPosTol) return false;
    } else if (d / span > scenario.v_max + 1e-9) {
      return false;
    }
    if (moving_point_collides(a.p, a.t, b.p, b.t, scenario, dt_check)) return false;
  }
  return true;
}

}  // namespace lbmp
