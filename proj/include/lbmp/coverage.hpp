#pragma once

#include <vector>

#include "lbmp/geom.hpp"
#include "lbmp/scenario.hpp"

namespace lbmp {

// Adjacency tolerance when merging cover intervals; avoids false gaps
// from rounding.
inline constexpr double kCoverMergeTol = 1e-9;

// Collinearity tolerance for zero-width bars.
inline constexpr double kBarTol = 1e-12;

// Parameter interval of seg covered by the closed obstacle at time t
// (at most one interval for these convex shapes). Bars cover a segment
// only when collinear with it. Callers keep t within [0,T].
std::vector<CoverInterval> shape_cover_interval(const AxisSegment& seg, const Obstacle& obstacle,
                                                double t);

// True iff the union of all obstacles covers seg entirely at time t.
// Degenerate segments reduce to a point-membership test.
bool segment_covered(const AxisSegment& seg, const Scenario& scenario, double t);

// Closed-set membership in the obstacle union (bar points count).
bool point_in_union(Vec2 p, const Scenario& scenario, double t);

// Euclidean distance from p to the closed obstacle union (0 inside).
double distance_to_union(Vec2 p, const Scenario& scenario, double t);

// Samples the linear motion p1@t1 -> p2@t2 at steps no longer than
// dt_check (endpoints included) and reports any sampled contact with the
// obstacle union; bar crossings are additionally caught per sampled
// sub-step with a segment intersection test.
bool moving_point_collides(Vec2 p1, double t1, Vec2 p2, double t2, const Scenario& scenario,
                           double dt_check);

}  // namespace lbmp
