#include "lbmp/search.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <queue>
#include <stdexcept>

namespace lbmp {

std::optional<double> earliest_reach(VertexId /*v*/, VertexId u, double g_v, double cost_vu,
                                     const IntervalTable& table) {
  const auto hit = first_interval_reaching(table, u, g_v + cost_vu);
  if (!hit) return std::nullopt;
  return hit->second;
}

std::vector<EdgeRef> constrained_neighbors(const LbpGraph& g, VertexId v,
                                           std::optional<VertexId> parent,
                                           const SearchOptions& opts) {
  auto all = g.neighbors(v);
  if (!opts.expansion_constraint || !parent || v == g.start_vertex()) return all;
  const CellId blocked = g.cell_of_edge(*parent, v);
  std::erase_if(all, [blocked](const EdgeRef& e) { return e.cell == blocked; });
  return all;
}

namespace {

struct OpenEntry {
  double f = 0.0;
  double g = 0.0;
  VertexId v = -1;
};

// Minimum f first; ties broken by larger g, then smaller vertex id.
struct OpenOrder {
  bool operator()(const OpenEntry& a, const OpenEntry& b) const {
    if (a.f != b.f) return a.f > b.f;
    if (a.g != b.g) return a.g < b.g;
    return a.v > b.v;
  }
};

}  // namespace

SearchResult solve(const LbpGraph& g, const IntervalTable& table, const SearchOptions& opts) {
  const auto t_begin = std::chrono::steady_clock::now();
  constexpr double kInf = std::numeric_limits<double>::infinity();

  SearchResult result;
  auto finish = [&](SearchStatus status) {
    result.status = status;
    result.stats.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t_begin)
            .count();
    return result;
  };

  const VertexId start = g.start_vertex();
  const VertexId goal = g.goal_vertex();
  const auto start_at_zero = first_interval_reaching(table, start, 0.0);
  if (!start_at_zero || start_at_zero->second != 0.0) return finish(SearchStatus::NoPath);

  const auto vcount = static_cast<std::size_t>(g.vertex_count());
  std::vector<double> gval(vcount, kInf);
  std::vector<VertexId> parent(vcount, -1);
  std::vector<CellId> parent_cell(vcount, -1);
  std::vector<double> parent_cost(vcount, 0.0);
  std::vector<std::vector<EdgeRef>> adjacency(vcount);  // filled on first expansion

  std::priority_queue<OpenEntry, std::vector<OpenEntry>, OpenOrder> open;
  gval[start] = 0.0;
  open.push({0.0, 0.0, start});
  result.stats.generated = 1;

  double last_popped_f = -kInf;
  while (!open.empty()) {
    const OpenEntry cur = open.top();
    open.pop();
    if (cur.g > gval[cur.v]) continue;  // stale entry
    if (cur.f < last_popped_f) throw std::logic_error("solve: popped f-values regressed");
    last_popped_f = cur.f;
    ++result.stats.expansions;

    if (cur.v == goal) {
      std::vector<VertexId> chain;
      for (VertexId v = goal; v != -1; v = parent[v]) chain.push_back(v);
      std::reverse(chain.begin(), chain.end());
      result.path.reserve(chain.size());
      for (std::size_t i = 0; i < chain.size(); ++i) {
        PathEntry entry;
        entry.vertex = chain[i];
        entry.arrival = gval[chain[i]];
        entry.wait = (i + 1 < chain.size())
                         ? gval[chain[i + 1]] - gval[chain[i]] - parent_cost[chain[i + 1]]
                         : 0.0;
        result.path.push_back(entry);
      }
      result.cost = gval[goal];
      return finish(SearchStatus::Solved);
    }

    if (adjacency[cur.v].empty()) adjacency[cur.v] = g.neighbors(cur.v);
    const bool filter = opts.expansion_constraint && cur.v != start;
    const CellId blocked = filter ? parent_cell[cur.v] : -1;
    for (const EdgeRef& e : adjacency[cur.v]) {
      if (filter && e.cell == blocked) continue;
      const auto hit = first_interval_reaching(table, e.to, gval[cur.v] + e.cost);
      if (!hit) continue;
      const double arrival = hit->second;
      if (gval[e.to] <= arrival) continue;
      gval[e.to] = arrival;
      parent[e.to] = cur.v;
      parent_cell[e.to] = e.cell;
      parent_cost[e.to] = e.cost;
      open.push({arrival, arrival, e.to});
      ++result.stats.generated;
    }
  }
  return finish(SearchStatus::NoPath);
}

}  // namespace lbmp
