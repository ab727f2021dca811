#include "lbmp/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lbmp {

namespace {

std::vector<CoverInterval> disc_cover(const AxisSegment& seg, Vec2 center, double r) {
  if (seg.degenerate()) {
    if (distance(seg.origin, center) <= r) return {{0.0, 1.0}};
    return {};
  }
  // || seg(u) - center ||^2 <= r^2, quadratic in u.
  const Vec2 e = seg.direction();
  const Vec2 m = seg.origin - center;
  const double a = e.norm2();
  const double b = 2.0 * m.dot(e);
  const double c = m.norm2() - r * r;
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return {};
  const double sq = std::sqrt(disc);
  // Stable quadratic roots.
  const double q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
  double u1 = q / a;
  double u2 = (q != 0.0) ? c / q : u1;
  if (u1 > u2) std::swap(u1, u2);
  const double lo = std::max(0.0, u1);
  const double hi = std::min(1.0, u2);
  if (lo > hi) return {};
  return {{lo, hi}};
}

std::vector<CoverInterval> polygon_cover(const AxisSegment& seg, const PolygonShape& poly,
                                         Vec2 offset) {
  // Clip the parameter interval against every half-plane; interior lies
  // to the left of each CCW edge.
  double lo = 0.0, hi = 1.0;
  const Vec2 e = seg.direction();
  const std::size_t m = poly.vertices.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2 q0 = poly.vertices[i] + offset;
    const Vec2 q1 = poly.vertices[(i + 1) % m] + offset;
    const Vec2 edge = q1 - q0;
    const Vec2 n{-edge.y, edge.x};
    const double f0 = n.dot(seg.origin - q0);
    const double fd = n.dot(e);
    if (std::abs(fd) < 1e-300) {
      if (f0 < 0.0) return {};
      continue;
    }
    const double u = -f0 / fd;
    if (fd > 0.0) {
      lo = std::max(lo, u);
    } else {
      hi = std::min(hi, u);
    }
    if (lo > hi) return {};
  }
  return {{lo, hi}};
}

std::vector<CoverInterval> bar_cover(const AxisSegment& seg, const BarShape& bar, Vec2 offset) {
  const Vec2 a = bar.a + offset;
  const Vec2 b = bar.b + offset;
  if (seg.degenerate()) {
    if (point_segment_distance(seg.origin, a, b) <= kBarTol) return {{0.0, 1.0}};
    return {};
  }
  const Vec2 e = seg.direction();
  const Vec2 d = b - a;
  if (std::abs(cross(e, d)) > kBarTol) return {};           // not parallel
  if (std::abs(cross(e, a - seg.origin)) > kBarTol) return {};  // parallel but offset
  const double len2 = e.norm2();
  double ua = (a - seg.origin).dot(e) / len2;
  double ub = (b - seg.origin).dot(e) / len2;
  if (ua > ub) std::swap(ua, ub);
  const double lo = std::max(0.0, ua);
  const double hi = std::min(1.0, ub);
  if (lo > hi) return {};
  return {{lo, hi}};
}

}  // namespace

std::vector<CoverInterval> shape_cover_interval(const AxisSegment& seg, const Obstacle& obstacle,
                                                double t) {
  const Vec2 offset = interpolate_pose(obstacle.trajectory, t);
  if (const auto* disc = std::get_if<DiscShape>(&obstacle.shape)) {
    return disc_cover(seg, offset, disc->radius);
  }
  if (const auto* poly = std::get_if<PolygonShape>(&obstacle.shape)) {
    return polygon_cover(seg, *poly, offset);
  }
  return bar_cover(seg, std::get<BarShape>(obstacle.shape), offset);
}

bool segment_covered(const AxisSegment& seg, const Scenario& scenario, double t) {
  if (seg.degenerate()) return point_in_union(seg.origin, scenario, t);

  std::vector<CoverInterval> ivs;
  for (const auto& obs : scenario.obstacles) {
    for (const auto& iv : shape_cover_interval(seg, obs, t)) ivs.push_back(iv);
  }
  if (ivs.empty()) return false;
  std::sort(ivs.begin(), ivs.end(),
            [](const CoverInterval& a, const CoverInterval& b) { return a.lo < b.lo; });
  double reach = 0.0;
  for (const auto& iv : ivs) {
    if (iv.lo > reach + kCoverMergeTol) break;
    reach = std::max(reach, iv.hi);
    if (reach >= 1.0 - kCoverMergeTol) return true;
  }
  return false;
}

bool point_in_union(Vec2 p, const Scenario& scenario, double t) {
  for (const auto& obs : scenario.obstacles) {
    const Vec2 offset = interpolate_pose(obs.trajectory, t);
    if (const auto* disc = std::get_if<DiscShape>(&obs.shape)) {
      if (distance(p, offset) <= disc->radius) return true;
      continue;
    }
    if (const auto* poly = std::get_if<PolygonShape>(&obs.shape)) {
      bool inside = true;
      const std::size_t m = poly->vertices.size();
      for (std::size_t i = 0; i < m && inside; ++i) {
        const Vec2 q0 = poly->vertices[i] + offset;
        const Vec2 q1 = poly->vertices[(i + 1) % m] + offset;
        if (cross(q1 - q0, p - q0) < -1e-12) inside = false;
      }
      if (inside) return true;
      continue;
    }
    const auto& bar = std::get<BarShape>(obs.shape);
    if (point_segment_distance(p, bar.a + offset, bar.b + offset) <= kBarTol) return true;
  }
  return false;
}

double distance_to_union(Vec2 p, const Scenario& scenario, double t) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& obs : scenario.obstacles) {
    const Vec2 offset = interpolate_pose(obs.trajectory, t);
    double d = best;
    if (const auto* disc = std::get_if<DiscShape>(&obs.shape)) {
      d = std::max(0.0, distance(p, offset) - disc->radius);
    } else if (const auto* poly = std::get_if<PolygonShape>(&obs.shape)) {
      bool inside = true;
      double edge_dist = std::numeric_limits<double>::infinity();
      const std::size_t m = poly->vertices.size();
      for (std::size_t i = 0; i < m; ++i) {
        const Vec2 q0 = poly->vertices[i] + offset;
        const Vec2 q1 = poly->vertices[(i + 1) % m] + offset;
        if (cross(q1 - q0, p - q0) < 0.0) inside = false;
        edge_dist = std::min(edge_dist, point_segment_distance(p, q0, q1));
      }
      d = inside ? 0.0 : edge_dist;
    } else {
      const auto& bar = std::get<BarShape>(obs.shape);
      d = point_segment_distance(p, bar.a + offset, bar.b + offset);
    }
    best = std::min(best, d);
  }
  return best;
}

bool moving_point_collides(Vec2 p1, double t1, Vec2 p2, double t2, const Scenario& scenario,
                           double dt_check) {
  const double span = t2 - t1;
  const int steps = span > 0.0 ? std::max(1, static_cast<int>(std::ceil(span / dt_check))) : 1;
  Vec2 prev_pos = p1;
  double prev_t = t1;
  for (int i = 0; i <= steps; ++i) {
    const double u = static_cast<double>(i) / steps;
    const Vec2 pos = p1 + (p2 - p1) * u;
    const double tau = t1 + span * u;
    if (point_in_union(pos, scenario, tau)) return true;
    if (i > 0 && !(pos == prev_pos)) {
      for (const auto& obs : scenario.obstacles) {
        const auto* bar = std::get_if<BarShape>(&obs.shape);
        if (bar == nullptr) continue;
        const Vec2 offset = interpolate_pose(obs.trajectory, prev_t);
        if (segments_properly_cross(prev_pos, pos, bar->a + offset, bar->b + offset)) return true;
      }
    }
    prev_pos = pos;
    prev_t = tau;
  }
  return false;
}

}  // namespace lbmp
