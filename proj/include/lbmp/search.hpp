#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lbmp/intervals.hpp"
#include "lbmp/lbp_graph.hpp"

namespace lbmp {

struct SearchOptions {
  // Forbid a successor edge from traversing the same cell as the edge
  // that reached the vertex (never applied when expanding the start).
  bool expansion_constraint = true;
};

enum class SearchStatus : std::uint8_t { Solved, NoPath };

struct PathEntry {
  VertexId vertex = -1;
  double arrival = 0.0;
  double wait = 0.0;  // dwell before departing along the next edge
};

struct SearchStats {
  std::int64_t expansions = 0;
  std::int64_t generated = 0;
  double wall_ms = 0.0;
};

struct SearchResult {
  SearchStatus status = SearchStatus::NoPath;
  double cost = 0.0;  // arrival time at the goal when solved
  std::vector<PathEntry> path;
  SearchStats stats;
};

// Earliest admissible arrival at u when departing v no earlier than g_v:
// the first interval of u ending at or after g_v + cost_vu, arriving at
// max(interval start, g_v + cost_vu); waiting happens at v.
std::optional<double> earliest_reach(VertexId v, VertexId u, double g_v, double cost_vu,
                                     const IntervalTable& table);

// Neighbor list with the expansion constraint applied: edges traversing
// the cell of the (parent, v) edge are dropped. The start vertex has no
// parent and is never filtered.
std::vector<EdgeRef> constrained_neighbors(const LbpGraph& g, VertexId v,
                                           std::optional<VertexId> parent,
                                           const SearchOptions& opts);

// Earliest-arrival search over the relaxed graph. Arrival times beyond
// the horizon are rejected; ties in the open list break on larger g then
// smaller vertex id, so results are deterministic.
SearchResult solve(const LbpGraph& g, const IntervalTable& table, const SearchOptions& opts = {});

}  // namespace lbmp
