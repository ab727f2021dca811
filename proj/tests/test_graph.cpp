#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "lbmp/lbp_graph.hpp"
#include "lbmp/util.hpp"

using namespace lbmp;

namespace {

Scenario empty_scene(double L, Vec2 s, Vec2 d, double v_max = 0.03) {
  Scenario scn;
  scn.workspace_size = L;
  scn.horizon = 100.0;
  scn.v_max = v_max;
  scn.start = s;
  scn.goal = d;
  return scn;
}

int sub_segment_degree(const LbpGraph& g, VertexId v) {
  int count = 0;
  for (const auto& e : g.neighbors(v)) {
    if (e.to < g.sub_vertex_count()) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("vertex count identity") {
  SUBCASE("n=10, k=10") {
    const auto g = build_graph(empty_scene(1.0, {0.31, 0.4}, {0.77, 0.66}), 10, 10);
    CHECK(g.vertex_count() == 2202);
  }
  SUBCASE("sampled (n,k) pairs") {
    for (int n : {1, 2, 3, 5, 8}) {
      for (int k : {1, 2, 4, 7}) {
        const auto g = build_graph(empty_scene(1.0, {0.31, 0.4}, {0.77, 0.66}), n, k);
        CHECK(g.vertex_count() == 2LL * k * (n * n + n) + 2);
        CHECK(g.line_segment_count() == 2 * n * (n + 1));
      }
    }
  }
}

TEST_CASE("single cell graph has the direct start-goal edge") {
  const auto g = build_graph(empty_scene(1.0, {0.3, 0.5}, {0.7, 0.5}, 1.0), 1, 1);
  CHECK(g.vertex_count() == 6);
  REQUIRE(g.direct_start_goal_edge().has_value());
  CHECK(g.direct_start_goal_edge()->cost == doctest::Approx(0.4).epsilon(1e-12));
  bool found = false;
  for (const auto& e : g.neighbors(g.start_vertex())) {
    if (e.to == g.goal_vertex()) found = true;
  }
  CHECK(found);
}

TEST_CASE("degree stays within 6k over the move edges") {
  const auto g = build_graph(empty_scene(1.0, {0.05, 0.05}, {0.95, 0.95}), 10, 3);
  int max_degree = 0;
  for (VertexId v = 0; v < g.sub_vertex_count(); ++v) {
    max_degree = std::max(max_degree, sub_segment_degree(g, v));
  }
  CHECK(max_degree <= 18);
  CHECK(max_degree == 18);  // interior sub-segments reach the bound
}

TEST_CASE("edge costs follow the minimum separation rule") {
  // Single 0.1-sized cell so local and global frames coincide.
  const auto g = build_graph(empty_scene(0.1, {0.01, 0.01}, {0.09, 0.09}), 1, 3);
  const double w = 0.1;
  // Vertex ids: line segment * k + sub; bottom ls=0, top ls=1, left ls=2, right ls=3.
  const VertexId bottom_last = 0 * 3 + 2;
  const VertexId right_first = 3 * 3 + 0;
  const VertexId right_mid = 3 * 3 + 1;
  const VertexId top_mid = 1 * 3 + 1;
  const VertexId bottom_first = 0 * 3 + 0;

  SUBCASE("corner-touching sub-segments cost zero") {
    CHECK(g.edge_cost(bottom_last, right_first) == 0.0);
  }
  SUBCASE("opposite boundaries, aligned subs, are one cell width apart") {
    CHECK(g.edge_cost(bottom_first, 1 * 3 + 0) == doctest::Approx(w / 0.03).epsilon(1e-12));
  }
  SUBCASE("perpendicular middles match the diagonal separation") {
    CHECK(g.edge_cost(top_mid, right_mid) ==
          doctest::Approx(std::sqrt(2.0) * w / 3.0 / 0.03).epsilon(1e-9));
    CHECK(g.edge_cost(top_mid, right_mid) == doctest::Approx(1.5713484).epsilon(1e-6));
  }
  SUBCASE("same line segment pairs are not edges") {
    CHECK_THROWS_AS(g.edge_cost(bottom_first, bottom_last), std::invalid_argument);
  }
  SUBCASE("cost is zero only when the sub-segments touch") {
    for (VertexId u = 0; u < g.sub_vertex_count(); ++u) {
      for (const auto& e : g.neighbors(u)) {
        if (e.to >= g.sub_vertex_count()) continue;
        CHECK(e.cost >= 0.0);
        const double gap = min_distance(g.sub_segment_geometry(u), g.sub_segment_geometry(e.to));
        CHECK((e.cost < 1e-12) == (gap < 1e-12));
      }
    }
  }
}

TEST_CASE("neighbor counts match the construction") {
  SUBCASE("interior sub-segment with k=1 has 6 neighbors") {
    const auto g = build_graph(empty_scene(1.0, {0.1, 0.1}, {0.9, 0.9}), 3, 1);
    // Horizontal interior segment: y = 1/3, x in [1/3, 2/3].
    const VertexId v = 4;  // ls id 1*3+1, k=1
    CHECK(g.line_segment_of(v) == 4);
    CHECK(g.neighbors(v).size() == 6);
    CHECK(sub_segment_degree(g, v) == 6);
  }
  SUBCASE("start strictly inside one cell with k=2 has 8 neighbors") {
    const auto g = build_graph(empty_scene(1.0, {0.5, 0.5}, {0.9, 0.1}), 3, 2);
    CHECK(g.neighbors(g.start_vertex()).size() == 8);
  }
  SUBCASE("goal neighbors mirror its incoming edges") {
    const auto g = build_graph(empty_scene(1.0, {0.1, 0.1}, {0.62, 0.58}), 3, 2);
    const auto from_goal = g.neighbors(g.goal_vertex());
    CHECK(from_goal.size() == g.goal_edges().size());
    for (const auto& e : from_goal) {
      const auto back = g.neighbors(e.to);
      bool mirrored = false;
      for (const auto& r : back) {
        if (r.to == g.goal_vertex() && r.cost == e.cost && r.cell == e.cell) mirrored = true;
      }
      CHECK(mirrored);
    }
  }
}

TEST_CASE("neighbors are undirected, sorted, and never share a line segment") {
  const auto g = build_graph(empty_scene(1.0, {0.21, 0.33}, {0.8, 0.71}), 4, 3);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto v = static_cast<VertexId>(util::uniform_index(rng, g.vertex_count()));
    const auto edges = g.neighbors(v);
    for (std::size_t i = 1; i < edges.size(); ++i) {
      CHECK(std::pair(edges[i - 1].to, edges[i - 1].cell) <= std::pair(edges[i].to, edges[i].cell));
    }
    for (const auto& e : edges) {
      if (v < g.sub_vertex_count() && e.to < g.sub_vertex_count()) {
        CHECK(g.line_segment_of(v) != g.line_segment_of(e.to));
      }
      bool mirrored = false;
      for (const auto& r : g.neighbors(e.to)) {
        if (r.to == v && r.cost == e.cost && r.cell == e.cell) mirrored = true;
      }
      CHECK(mirrored);
    }
  }
}

TEST_CASE("cell_of_edge identifies the traversed cell") {
  const auto g = build_graph(empty_scene(1.0, {0.4, 0.4}, {0.9, 0.9}), 2, 1);
  // Cell 0 spans [0,0.5]^2; bottom ls=0, left ls=6 (vertical block starts at 6).
  const VertexId bottom = 0;
  const VertexId left = 6;
  const VertexId top = 2;  // ls id 2 = horizontal j=1,i=0
  CHECK(g.cell_of_edge(bottom, left) == 0);
  CHECK(g.cell_of_edge(bottom, top) == 0);
  CHECK(g.cell_of_edge(top, bottom) == 0);
  // Start point (0.4,0.4) lies in cell 0.
  CHECK(g.cell_of_edge(g.start_vertex(), bottom) == 0);
  CHECK_THROWS_AS(g.cell_of_edge(bottom, 1), std::invalid_argument);
}

TEST_CASE("start and goal connect to every adjacent cell") {
  SUBCASE("interior corner point touches four cells") {
    const auto g = build_graph(empty_scene(1.0, {0.5, 0.5}, {0.1, 0.1}), 2, 1);
    CHECK(g.cells_of_vertex(g.start_vertex()).size() == 4);
    CHECK(g.start_edges().size() == 16);
  }
  SUBCASE("border midpoint touches two cells") {
    const auto g = build_graph(empty_scene(1.0, {0.0, 0.5}, {0.9, 0.9}), 2, 1);
    CHECK(g.cells_of_vertex(g.start_vertex()).size() == 2);
    CHECK(g.start_edges().size() == 8);
  }
  SUBCASE("start on a sub-segment point gets a zero-cost hookup") {
    const auto g = build_graph(empty_scene(1.0, {0.0, 0.5}, {0.9, 0.9}), 2, 1);
    bool zero = false;
    for (const auto& e : g.start_edges()) {
      if (e.cost == 0.0) zero = true;
    }
    CHECK(zero);
  }
}

TEST_CASE("refinement keeps sub-segments nested and costs ordered") {
  const auto coarse = build_graph(empty_scene(1.0, {0.21, 0.33}, {0.8, 0.71}), 3, 2);
  const auto fine = build_graph(empty_scene(1.0, {0.21, 0.33}, {0.8, 0.71}), 3, 4);
  const int m = 2;  // refinement factor
  for (VertexId vf = 0; vf < fine.sub_vertex_count(); ++vf) {
    const auto child = fine.sub_segment_geometry(vf);
    const VertexId parent = static_cast<VertexId>((vf / 4) * 2 + (vf % 4) / m);
    const auto par = coarse.sub_segment_geometry(parent);
    CHECK(par.axis == child.axis);
    const double lo = child.axis == Axis::Horizontal ? child.origin.x : child.origin.y;
    const double plo = par.axis == Axis::Horizontal ? par.origin.x : par.origin.y;
    CHECK(lo >= plo - 1e-12);
    CHECK(lo + child.length <= plo + par.length + 1e-12);
  }
  // Coarse parents never cost more than their fine children.
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const auto vf = static_cast<VertexId>(util::uniform_index(rng, fine.sub_vertex_count()));
    const auto edges = fine.neighbors(vf);
    if (edges.empty()) continue;
    const auto& e = edges[util::uniform_index(rng, edges.size())];
    if (e.to >= fine.sub_vertex_count()) continue;
    const VertexId pu = static_cast<VertexId>((vf / 4) * 2 + (vf % 4) / m);
    const VertexId pv = static_cast<VertexId>((e.to / 4) * 2 + (e.to % 4) / m);
    if (coarse.line_segment_of(pu) == coarse.line_segment_of(pv)) continue;
    CHECK(coarse.edge_cost(pu, pv) <= e.cost + 1e-12);
  }
}

TEST_CASE("vertex cap raises a resource error") {
  CHECK_THROWS_AS(build_graph(empty_scene(1.0, {0.1, 0.1}, {0.9, 0.9}), 100, 100, 1000),
                  ResourceLimitError);
}
