#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "lbmp/geom.hpp"
#include "lbmp/scenario.hpp"

namespace lbmp {

using VertexId = std::int32_t;
using CellId = std::int32_t;
using LineSegmentId = std::int32_t;

enum class VertexKind : std::uint8_t { SubSegment, Start, Goal };

struct VertexPayload {
  AxisSegment sub_segment;  // degenerate point for start/goal
  LineSegmentId line_segment = -1;
  std::array<CellId, 2> adjacent_cells{-1, -1};
  VertexKind kind = VertexKind::SubSegment;
};

struct EdgeRef {
  VertexId to = -1;
  double cost = 0.0;
  CellId cell = -1;
};

struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Relaxed transition graph over an n x n cell decomposition whose cell
// boundaries are split into k sub-segments each. Vertices are the
// sub-segments plus the start and goal points; within a cell any two
// sub-segments on different boundaries are joined by an undirected move
// edge costed at their minimum separation over v_max. Intra-cell
// adjacency is shared across cells through a single template.
class LbpGraph {
 public:
  static constexpr std::int64_t kDefaultVertexCap = 4'000'000;

  static LbpGraph build(const Scenario& scenario, int n, int k,
                        std::int64_t max_vertices = kDefaultVertexCap);

  int n() const { return n_; }
  int k() const { return k_; }
  double cell_size() const { return w_; }
  double v_max() const { return v_max_; }
  Vec2 start_point() const { return start_point_; }
  Vec2 goal_point() const { return goal_point_; }

  std::int64_t vertex_count() const { return sub_vertex_count_ + 2; }
  std::int64_t sub_vertex_count() const { return sub_vertex_count_; }
  VertexId start_vertex() const { return static_cast<VertexId>(sub_vertex_count_); }
  VertexId goal_vertex() const { return static_cast<VertexId>(sub_vertex_count_ + 1); }

  int line_segment_count() const { return 2 * n_ * (n_ + 1); }
  int cell_count() const { return n_ * n_; }

  VertexPayload vertex(VertexId v) const;
  LineSegmentId line_segment_of(VertexId v) const;
  AxisSegment line_segment_geometry(LineSegmentId ls) const;
  AxisSegment sub_segment_geometry(VertexId v) const;

  // The up to two cells this vertex borders (for start/goal: the cells
  // containing the point).
  std::vector<CellId> cells_of_vertex(VertexId v) const;
  std::vector<VertexId> cell_vertices(CellId cell) const;  // the 4k boundary sub-segments

  // All incident edges annotated with the traversed cell, ascending by
  // (vertex id, cell id).
  std::vector<EdgeRef> neighbors(VertexId v) const;

  // Throws std::invalid_argument when (u,v) is not an edge.
  double edge_cost(VertexId u, VertexId v) const;
  CellId cell_of_edge(VertexId u, VertexId v) const;

  const std::vector<EdgeRef>& start_edges() const { return start_edges_; }
  const std::vector<EdgeRef>& goal_edges() const { return goal_edges_; }
  const std::optional<EdgeRef>& direct_start_goal_edge() const { return sd_edge_; }

  // CSV edge listing "u,v,cost,cell" (each undirected edge once).
  void dump_edges(std::ostream& out) const;

 private:
  LbpGraph() = default;

  bool valid_vertex(VertexId v) const { return v >= 0 && v < vertex_count(); }
  VertexId vertex_at(CellId cell, int local) const;
  int local_index(CellId cell, VertexId v) const;  // -1 when v is not on this cell
  std::array<LineSegmentId, 4> cell_boundaries(CellId cell) const;
  std::vector<CellId> cells_containing_point(Vec2 p) const;
  void append_special_edges(VertexId v, std::vector<EdgeRef>& out) const;

  int n_ = 0;
  int k_ = 0;
  double w_ = 0.0;
  double v_max_ = 1.0;
  Vec2 start_point_, goal_point_;
  std::int64_t sub_vertex_count_ = 0;

  // Shared per-cell adjacency over local indices (boundary * k + sub).
  std::vector<std::vector<std::pair<int, double>>> template_adj_;

  std::vector<CellId> start_cells_, goal_cells_;
  std::vector<EdgeRef> start_edges_, goal_edges_;
  std::optional<EdgeRef> sd_edge_;
  std::unordered_map<VertexId, std::vector<EdgeRef>> special_adj_;
};

// Free-function spellings of the graph operations.
inline LbpGraph build_graph(const Scenario& scenario, int n, int k,
                            std::int64_t max_vertices = LbpGraph::kDefaultVertexCap) {
  return LbpGraph::build(scenario, n, k, max_vertices);
}
inline std::vector<EdgeRef> neighbors(const LbpGraph& g, VertexId v) { return g.neighbors(v); }
inline double edge_cost(const LbpGraph& g, VertexId u, VertexId v) { return g.edge_cost(u, v); }
inline CellId cell_of_edge(const LbpGraph& g, VertexId u, VertexId v) {
  return g.cell_of_edge(u, v);
}

}  // namespace lbmp
