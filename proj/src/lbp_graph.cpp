#include "lbmp/lbp_graph.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace lbmp {

namespace {

constexpr double kGridSnapTol = 1e-12;

AxisSegment local_sub_segment(int boundary, int sub, int k, double w) {
  const double lo = (static_cast<double>(sub) / k) * w;
  const double hi = (static_cast<double>(sub + 1) / k) * w;
  const double len = hi - lo;
  switch (boundary) {
    case 0: return {{lo, 0.0}, Axis::Horizontal, len};  // bottom
    case 1: return {{lo, w}, Axis::Horizontal, len};    // top
    case 2: return {{0.0, lo}, Axis::Vertical, len};    // left
    default: return {{w, lo}, Axis::Vertical, len};     // right
  }
}

}  // namespace

LbpGraph LbpGraph::build(const Scenario& scenario, int n, int k, std::int64_t max_vertices) {
  if (n < 1 || k < 1) throw std::invalid_argument("build_graph: n and k must be >= 1");
  const std::int64_t sub_count = 2LL * k * n * (n + 1);
  if (sub_count + 2 > max_vertices) {
    throw ResourceLimitError("build_graph: vertex count " + std::to_string(sub_count + 2) +
                             " exceeds cap " + std::to_string(max_vertices));
  }

  LbpGraph g;
  g.n_ = n;
  g.k_ = k;
  g.w_ = scenario.workspace_size / n;
  g.v_max_ = scenario.v_max;
  g.start_point_ = scenario.start;
  g.goal_point_ = scenario.goal;
  g.sub_vertex_count_ = sub_count;

  // One adjacency template shared by all cells: any two sub-segments on
  // different boundaries are connected.
  const int locals = 4 * k;
  g.template_adj_.resize(locals);
  std::vector<AxisSegment> local_geom(locals);
  for (int b = 0; b < 4; ++b) {
    for (int s = 0; s < k; ++s) local_geom[b * k + s] = local_sub_segment(b, s, k, g.w_);
  }
  for (int a = 0; a < locals; ++a) {
    auto& row = g.template_adj_[a];
    row.reserve(3 * k);
    for (int b = 0; b < locals; ++b) {
      if (a / k == b / k) continue;
      row.emplace_back(b, min_distance(local_geom[a], local_geom[b]) / g.v_max_);
    }
  }

  const VertexId start_id = g.start_vertex();
  const VertexId goal_id = g.goal_vertex();
  g.start_cells_ = g.cells_containing_point(scenario.start);
  g.goal_cells_ = g.cells_containing_point(scenario.goal);

  auto connect_point = [&](Vec2 p, VertexId point_id, const std::vector<CellId>& cells,
                           std::vector<EdgeRef>& edges) {
    const AxisSegment point_seg{p, Axis::Horizontal, 0.0};
    for (CellId c : cells) {
      for (int local = 0; local < locals; ++local) {
        const VertexId to = g.vertex_at(c, local);
        const double cost = min_distance(point_seg, g.sub_segment_geometry(to)) / g.v_max_;
        edges.push_back({to, cost, c});
        g.special_adj_[to].push_back({point_id, cost, c});
      }
    }
    std::sort(edges.begin(), edges.end(), [](const EdgeRef& a, const EdgeRef& b) {
      return a.to != b.to ? a.to < b.to : a.cell < b.cell;
    });
  };
  connect_point(scenario.start, start_id, g.start_cells_, g.start_edges_);
  connect_point(scenario.goal, goal_id, g.goal_cells_, g.goal_edges_);

  for (CellId c : g.start_cells_) {
    if (std::find(g.goal_cells_.begin(), g.goal_cells_.end(), c) != g.goal_cells_.end()) {
      const double cost = distance(scenario.start, scenario.goal) / g.v_max_;
      g.sd_edge_ = EdgeRef{goal_id, cost, c};
      break;  // cells are ascending; keep the smallest shared cell
    }
  }

  for (auto& [v, edges] : g.special_adj_) {
    std::sort(edges.begin(), edges.end(), [](const EdgeRef& a, const EdgeRef& b) {
      return a.to != b.to ? a.to < b.to : a.cell < b.cell;
    });
  }
  return g;
}

std::array<LineSegmentId, 4> LbpGraph::cell_boundaries(CellId cell) const {
  const int cx = cell % n_;
  const int cy = cell / n_;
  const int hcount = n_ * (n_ + 1);
  return {
      static_cast<LineSegmentId>(cy * n_ + cx),              // bottom
      static_cast<LineSegmentId>((cy + 1) * n_ + cx),        // top
      static_cast<LineSegmentId>(hcount + cx * n_ + cy),     // left
      static_cast<LineSegmentId>(hcount + (cx + 1) * n_ + cy)  // right
  };
}

VertexId LbpGraph::vertex_at(CellId cell, int local) const {
  const auto ls = cell_boundaries(cell)[local / k_];
  return static_cast<VertexId>(static_cast<std::int64_t>(ls) * k_ + local % k_);
}

int LbpGraph::local_index(CellId cell, VertexId v) const {
  const LineSegmentId ls = line_segment_of(v);
  const auto bounds = cell_boundaries(cell);
  for (int b = 0; b < 4; ++b) {
    if (bounds[b] == ls) return b * k_ + static_cast<int>(v % k_);
  }
  return -1;
}

LineSegmentId LbpGraph::line_segment_of(VertexId v) const {
  if (v < 0 || v >= sub_vertex_count_) return -1;
  return static_cast<LineSegmentId>(v / k_);
}

AxisSegment LbpGraph::line_segment_geometry(LineSegmentId ls) const {
  const int hcount = n_ * (n_ + 1);
  if (ls < hcount) {
    const int j = ls / n_;
    const int i = ls % n_;
    return {{i * w_, j * w_}, Axis::Horizontal, w_};
  }
  const int t = ls - hcount;
  const int i = t / n_;
  const int j = t % n_;
  return {{i * w_, j * w_}, Axis::Vertical, w_};
}

AxisSegment LbpGraph::sub_segment_geometry(VertexId v) const {
  if (v == start_vertex()) return {start_point_, Axis::Horizontal, 0.0};
  if (v == goal_vertex()) return {goal_point_, Axis::Horizontal, 0.0};
  const AxisSegment ls = line_segment_geometry(line_segment_of(v));
  const int sub = static_cast<int>(v % k_);
  const double lo = (static_cast<double>(sub) / k_) * w_;
  const double hi = (static_cast<double>(sub + 1) / k_) * w_;
  AxisSegment out = ls;
  out.length = hi - lo;
  if (ls.axis == Axis::Horizontal) {
    out.origin.x += lo;
  } else {
    out.origin.y += lo;
  }
  return out;
}

std::vector<CellId> LbpGraph::cells_of_vertex(VertexId v) const {
  if (v == start_vertex()) return start_cells_;
  if (v == goal_vertex()) return goal_cells_;
  const LineSegmentId ls = line_segment_of(v);
  const int hcount = n_ * (n_ + 1);
  std::vector<CellId> cells;
  if (ls < hcount) {
    const int j = ls / n_;
    const int i = ls % n_;
    if (j > 0) cells.push_back((j - 1) * n_ + i);
    if (j < n_) cells.push_back(j * n_ + i);
  } else {
    const int t = ls - hcount;
    const int i = t / n_;
    const int j = t % n_;
    if (i > 0) cells.push_back(j * n_ + (i - 1));
    if (i < n_) cells.push_back(j * n_ + i);
  }
  return cells;
}

std::vector<VertexId> LbpGraph::cell_vertices(CellId cell) const {
  std::vector<VertexId> out;
  out.reserve(4 * k_);
  for (int local = 0; local < 4 * k_; ++local) out.push_back(vertex_at(cell, local));
  return out;
}

VertexPayload LbpGraph::vertex(VertexId v) const {
  if (!valid_vertex(v)) throw std::invalid_argument("vertex: id out of range");
  VertexPayload p;
  p.sub_segment = sub_segment_geometry(v);
  p.line_segment = line_segment_of(v);
  const auto cells = cells_of_vertex(v);
  for (std::size_t i = 0; i < cells.size() && i < 2; ++i) p.adjacent_cells[i] = cells[i];
  p.kind = v == start_vertex() ? VertexKind::Start
           : v == goal_vertex() ? VertexKind::Goal
                                : VertexKind::SubSegment;
  return p;
}

std::vector<CellId> LbpGraph::cells_containing_point(Vec2 p) const {
  auto indices_along = [this](double x) {
    std::vector<int> out;
    const double xi = x / w_;
    const auto near = static_cast<long long>(std::llround(xi));
    if (std::abs(x - near * w_) <= kGridSnapTol) {
      out.push_back(static_cast<int>(near) - 1);
      out.push_back(static_cast<int>(near));
    } else {
      out.push_back(static_cast<int>(std::floor(xi)));
    }
    std::vector<int> clamped;
    for (int i : out) {
      const int c = std::clamp(i, 0, n_ - 1);
      if (clamped.empty() || clamped.back() != c) clamped.push_back(c);
    }
    return clamped;
  };
  std::vector<CellId> cells;
  for (int iy : indices_along(p.y)) {
    for (int ix : indices_along(p.x)) cells.push_back(iy * n_ + ix);
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return cells;
}

void LbpGraph::append_special_edges(VertexId v, std::vector<EdgeRef>& out) const {
  const auto it = special_adj_.find(v);
  if (it != special_adj_.end()) out.insert(out.end(), it->second.begin(), it->second.end());
}

std::vector<EdgeRef> LbpGraph::neighbors(VertexId v) const {
  if (!valid_vertex(v)) throw std::invalid_argument("neighbors: id out of range");
  std::vector<EdgeRef> out;
  if (v == start_vertex()) {
    out = start_edges_;
    if (sd_edge_) out.push_back(*sd_edge_);
  } else if (v == goal_vertex()) {
    out = goal_edges_;
    if (sd_edge_) out.push_back({start_vertex(), sd_edge_->cost, sd_edge_->cell});
  } else {
    out.reserve(6 * static_cast<std::size_t>(k_) + 4);
    for (CellId c : cells_of_vertex(v)) {
      const int local = local_index(c, v);
      for (const auto& [other, cost] : template_adj_[local]) {
        out.push_back({vertex_at(c, other), cost, c});
      }
    }
    append_special_edges(v, out);
  }
  std::sort(out.begin(), out.end(), [](const EdgeRef& a, const EdgeRef& b) {
    return a.to != b.to ? a.to < b.to : a.cell < b.cell;
  });
  return out;
}

double LbpGraph::edge_cost(VertexId u, VertexId v) const {
  if (!valid_vertex(u) || !valid_vertex(v)) {
    throw std::invalid_argument("edge_cost: vertex id out of range");
  }
  for (const auto& e : neighbors(u)) {
    if (e.to == v) return e.cost;
  }
  throw std::invalid_argument("edge_cost: (" + std::to_string(u) + "," + std::to_string(v) +
                              ") is not an edge");
}

CellId LbpGraph::cell_of_edge(VertexId u, VertexId v) const {
  if (!valid_vertex(u) || !valid_vertex(v)) {
    throw std::invalid_argument("cell_of_edge: vertex id out of range");
  }
  for (const auto& e : neighbors(u)) {
    if (e.to == v) return e.cell;  // ascending order: smallest cell id wins
  }
  throw std::invalid_argument("cell_of_edge: (" + std::to_string(u) + "," + std::to_string(v) +
                              ") is not an edge");
}

void LbpGraph::dump_edges(std::ostream& out) const {
  out << "u,v,cost,cell\n";
  for (CellId c = 0; c < cell_count(); ++c) {
    for (int a = 0; a < 4 * k_; ++a) {
      const VertexId u = vertex_at(c, a);
      for (const auto& [b, cost] : template_adj_[a]) {
        const VertexId v = vertex_at(c, b);
        if (u < v) out << u << ',' << v << ',' << cost << ',' << c << '\n';
      }
    }
  }
  for (const auto& e : start_edges_) {
    out << start_vertex() << ',' << e.to << ',' << e.cost << ',' << e.cell << '\n';
  }
  for (const auto& e : goal_edges_) {
    out << goal_vertex() << ',' << e.to << ',' << e.cost << ',' << e.cell << '\n';
  }
  if (sd_edge_) {
    out << start_vertex() << ',' << sd_edge_->to << ',' << sd_edge_->cost << ',' << sd_edge_->cell
        << '\n';
  }
}

}  // namespace lbmp
