#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "lbmp/intervals.hpp"
#include "lbmp/lbp_graph.hpp"
#include "lbmp/presets.hpp"
#include "lbmp/scenario.hpp"
#include "lbmp/search.hpp"

using namespace lbmp;

namespace {

Scenario corridor_scene(double v_max = 0.03) {
  Scenario s;
  s.workspace_size = 1.0;
  s.horizon = 100.0;
  s.v_max = v_max;
  s.start = {0.0, 0.5};
  s.goal = {1.0, 0.5};
  return s;
}

}  // namespace

TEST_CASE("earliest_reach applies the interval rule") {
  std::vector<std::vector<TimeInterval>> per_ls{
      {{0.0, 10.0}}, {{0.0, 2.0}, {3.0, 10.0}}, {{0.0, 2.0}}};
  const IntervalTable table(per_ls, {{0.0, 10.0}}, {{0.0, 10.0}}, 1, 100, 10.0, 0.1);
  SUBCASE("unconstrained target") {
    const auto r = earliest_reach(9, 0, 5.0, 1.0, table);
    REQUIRE(r.has_value());
    CHECK(*r == 6.0);
  }
  SUBCASE("wait-then-move across a gap") {
    const auto r = earliest_reach(9, 1, 2.0, 0.5, table);
    REQUIRE(r.has_value());
    CHECK(*r == 3.0);
  }
  SUBCASE("no interval can admit the arrival") {
    CHECK_FALSE(earliest_reach(9, 2, 2.0, 0.5, table).has_value());
  }
}

TEST_CASE("constrained_neighbors filters the parent edge cell") {
  const Scenario s = corridor_scene();
  const auto g = build_graph(s, 2, 1);
  // Vertical boundary between cells 0 and 1 (x=0.5, y in [0,0.5]).
  const VertexId mid = 8;
  const VertexId bottom_left = 0;
  REQUIRE(g.cell_of_edge(bottom_left, mid) == 0);

  SearchOptions on;
  SearchOptions off;
  off.expansion_constraint = false;

  const auto filtered = constrained_neighbors(g, mid, bottom_left, on);
  CHECK_FALSE(filtered.empty());
  for (const auto& e : filtered) CHECK(e.cell == 1);

  const auto plain = g.neighbors(mid);
  CHECK(constrained_neighbors(g, mid, bottom_left, off).size() == plain.size());
  CHECK(constrained_neighbors(g, mid, std::nullopt, on).size() == plain.size());
  CHECK(constrained_neighbors(g, g.start_vertex(), std::nullopt, on).size() ==
        g.neighbors(g.start_vertex()).size());
}

TEST_CASE("direct start-goal solution records the wait") {
  Scenario s;
  s.workspace_size = 1.0;
  s.horizon = 10.0;
  s.v_max = 1.0;
  s.start = {0.3, 0.5};
  s.goal = {0.7, 0.5};
  const auto g = build_graph(s, 1, 1);
  std::vector<std::vector<TimeInterval>> per_ls(4, {{0.0, 10.0}});
  const IntervalTable table(per_ls, {{0.0, 10.0}}, {{1.0, 10.0}}, 1, g.start_vertex(), 10.0, 0.1);

  const auto res = solve(g, table);
  REQUIRE(res.status == SearchStatus::Solved);
  CHECK(res.cost == 1.0);
  REQUIRE(res.path.size() == 2);
  CHECK(res.path[0].vertex == g.start_vertex());
  CHECK(res.path[0].arrival == 0.0);
  CHECK(res.path[0].wait == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(res.path[1].vertex == g.goal_vertex());
  CHECK(res.path[1].arrival == 1.0);
  CHECK(res.path[1].wait == 0.0);
  CHECK(res.stats.expansions == 6);
}

TEST_CASE("start not reachable at time zero fails immediately") {
  Scenario s;
  s.workspace_size = 1.0;
  s.horizon = 10.0;
  s.v_max = 1.0;
  s.start = {0.3, 0.5};
  s.goal = {0.7, 0.5};
  const auto g = build_graph(s, 1, 1);
  std::vector<std::vector<TimeInterval>> per_ls(4, {{0.0, 10.0}});
  const IntervalTable table(per_ls, {{1.0, 10.0}}, {{0.0, 10.0}}, 1, g.start_vertex(), 10.0, 0.1);
  const auto res = solve(g, table);
  CHECK(res.status == SearchStatus::NoPath);
  CHECK(res.stats.expansions == 0);
}

TEST_CASE("single-cell relaxation keeps only the direct transit") {
  const Scenario s = corridor_scene();
  const auto g = build_graph(s, 1, 1);
  const auto table = compute_reachable_intervals(g, s, 2.0);
  // Default mode: every two-edge continuation would re-traverse the one
  // cell, so the direct start-goal edge is the whole search space.
  const auto res = solve(g, table);
  REQUIRE(res.status == SearchStatus::Solved);
  CHECK(res.cost == doctest::Approx(1.0 / 0.03).epsilon(1e-12));
  CHECK(res.cost > 0.0);
}

TEST_CASE("empty corridor matches the per-cell shortfall exactly") {
  const Scenario s = corridor_scene();
  SearchOptions off;
  off.expansion_constraint = false;
  // The identity needs the corridor on a grid line, i.e. even n; odd n
  // pays a grid-misalignment premium (still a valid lower bound).
  for (int n : {2, 4, 10}) {
    const auto g = build_graph(s, n, 1);
    const auto table = compute_reachable_intervals(g, s, 2.0);
    for (int k : {1, 3, 5}) {
      const auto gk = build_graph(s, n, k);
      const auto res = solve(gk, table.rebind(gk), off);
      REQUIRE(res.status == SearchStatus::Solved);
      const double expected = (static_cast<double>(k - 1) / k) / 0.03;
      CHECK(res.cost == doctest::Approx(expected).epsilon(1e-9));

      SearchOptions on;
      const auto res_on = solve(gk, table.rebind(gk), on);
      REQUIRE(res_on.status == SearchStatus::Solved);
      CHECK(res_on.cost >= res.cost - 1e-12);
    }
  }
  for (int n : {3, 5}) {
    const auto g = build_graph(s, n, 4);
    const auto table = compute_reachable_intervals(g, s, 2.0);
    const auto res = solve(g, table, off);
    REQUIRE(res.status == SearchStatus::Solved);
    CHECK(res.cost >= (3.0 / 4.0) / 0.03 - 1e-9);
    CHECK(res.cost <= 1.0 / 0.03 + 1e-9);
  }
}

TEST_CASE("fully covered workspace yields no path") {
  Scenario s;
  s.workspace_size = 1.0;
  s.horizon = 10.0;
  s.v_max = 0.03;
  s.start = {0.25, 0.25};
  s.goal = {0.75, 0.75};
  Obstacle blanket;
  blanket.shape = DiscShape{2.0};
  blanket.trajectory.waypoints.push_back({0.0, {0.5, 0.5}});
  s.obstacles.push_back(blanket);
  const auto g = build_graph(s, 2, 1);
  const auto table = compute_reachable_intervals(g, s, 0.5);
  CHECK(solve(g, table).status == SearchStatus::NoPath);
}

TEST_CASE("solved paths satisfy the arrival recurrence and interval membership") {
  const Scenario s = make_exp2_scenario();
  const auto g = build_graph(s, 10, 6);
  const auto table = compute_reachable_intervals(g, s, 0.03);
  const auto res = solve(g, table);
  REQUIRE(res.status == SearchStatus::Solved);
  CHECK(res.cost == res.path.back().arrival);

  double wait_sum = 0.0;
  double cost_sum = 0.0;
  for (std::size_t i = 0; i < res.path.size(); ++i) {
    const auto& entry = res.path[i];
    bool inside = false;
    for (const auto& iv : table.vertex_intervals(entry.vertex)) {
      if (iv.a - 1e-9 <= entry.arrival && entry.arrival <= iv.b + 1e-9) inside = true;
    }
    CHECK(inside);
    CHECK(entry.wait >= -1e-12);
    wait_sum += entry.wait;
    if (i + 1 < res.path.size()) {
      const double c = g.edge_cost(entry.vertex, res.path[i + 1].vertex);
      cost_sum += c;
      CHECK(res.path[i + 1].arrival ==
            doctest::Approx(entry.arrival + entry.wait + c).epsilon(1e-9));
    }
  }
  CHECK(res.cost == doctest::Approx(wait_sum + cost_sum).epsilon(1e-9));
}

TEST_CASE("identical inputs give identical results") {
  const Scenario s = make_exp2_scenario();
  const auto g = build_graph(s, 8, 6);
  const auto table = compute_reachable_intervals(g, s, 0.05);
  const auto a = solve(g, table);
  const auto b = solve(g, table);
  CHECK(a.status == b.status);
  CHECK(a.cost == b.cost);
  CHECK(a.stats.expansions == b.stats.expansions);
  CHECK(a.stats.generated == b.stats.generated);
  REQUIRE(a.path.size() == b.path.size());
  for (std::size_t i = 0; i < a.path.size(); ++i) {
    CHECK(a.path[i].vertex == b.path[i].vertex);
    CHECK(a.path[i].arrival == b.path[i].arrival);
  }
}

TEST_CASE("the expansion constraint never loosens the bound") {
  const Scenario s = make_exp2_scenario();
  const auto g = build_graph(s, 10, 5);
  const auto table = compute_reachable_intervals(g, s, 0.03);
  SearchOptions on;
  SearchOptions off;
  off.expansion_constraint = false;
  const auto res_on = solve(g, table, on);
  const auto res_off = solve(g, table, off);
  REQUIRE(res_on.status == SearchStatus::Solved);
  REQUIRE(res_off.status == SearchStatus::Solved);
  CHECK(res_on.cost >= res_off.cost - 1e-12);
}

TEST_CASE("sub-segment refinement tightens the bound") {
  const Scenario s = make_exp2_scenario();
  SearchOptions off;
  off.expansion_constraint = false;
  const auto g2 = build_graph(s, 8, 2);
  const auto table = compute_reachable_intervals(g2, s, 0.03);
  double prev = -1.0;
  for (int k : {2, 4, 8}) {
    const auto gk = build_graph(s, 8, k);
    const auto res = solve(gk, table.rebind(gk), off);
    REQUIRE(res.status == SearchStatus::Solved);
    CHECK(res.cost >= prev - 1e-9);
    prev = res.cost;
  }
}

TEST_CASE("waits appear when the first interval closes too early") {
  Scenario s;
  s.workspace_size = 1.0;
  s.horizon = 10.0;
  s.v_max = 1.0;
  s.start = {0.3, 0.5};
  s.goal = {0.7, 0.5};
  const auto g = build_graph(s, 1, 1);
  std::vector<std::vector<TimeInterval>> per_ls(4, {{0.0, 2.0}, {3.0, 10.0}});
  const IntervalTable table(per_ls, {{0.0, 10.0}}, {{3.5, 10.0}}, 1, g.start_vertex(), 10.0, 0.1);
  const auto res = solve(g, table);
  REQUIRE(res.status == SearchStatus::Solved);
  CHECK(res.cost == 3.5);
  double wait_sum = 0.0;
  for (const auto& e : res.path) wait_sum += e.wait;
  CHECK(wait_sum == doctest::Approx(3.1).epsilon(1e-9));
}
