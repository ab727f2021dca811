#include "lbmp/geom.hpp"

#include <algorithm>

namespace lbmp {

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 d = b - a;
  const double len2 = d.norm2();
  if (len2 == 0.0) return distance(p, a);
  double u = (p - a).dot(d) / len2;
  u = std::clamp(u, 0.0, 1.0);
  return distance(p, a + d * u);
}

namespace {

int orientation_sign(Vec2 a, Vec2 b, Vec2 c) {
  const double v = cross(b - a, c - a);
  if (v > 0.0) return 1;
  if (v < 0.0) return -1;
  return 0;
}

bool within_bounding_box(Vec2 a, Vec2 b, Vec2 p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

}  // namespace

bool segments_intersect(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) {
  const int d1 = orientation_sign(b0, b1, a0);
  const int d2 = orientation_sign(b0, b1, a1);
  const int d3 = orientation_sign(a0, a1, b0);
  const int d4 = orientation_sign(a0, a1, b1);
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && within_bounding_box(b0, b1, a0)) return true;
  if (d2 == 0 && within_bounding_box(b0, b1, a1)) return true;
  if (d3 == 0 && within_bounding_box(a0, a1, b0)) return true;
  if (d4 == 0 && within_bounding_box(a0, a1, b1)) return true;
  return false;
}

bool segments_properly_cross(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) {
  const int d1 = orientation_sign(b0, b1, a0);
  const int d2 = orientation_sign(b0, b1, a1);
  const int d3 = orientation_sign(a0, a1, b0);
  const int d4 = orientation_sign(a0, a1, b1);
  return d1 * d2 < 0 && d3 * d4 < 0;
}

double segment_segment_distance(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) {
  if (segments_intersect(a0, a1, b0, b1)) return 0.0;
  const double d = std::min(
      std::min(point_segment_distance(a0, b0, b1), point_segment_distance(a1, b0, b1)),
      std::min(point_segment_distance(b0, a0, a1), point_segment_distance(b1, a0, a1)));
  return d;
}

double min_distance(const AxisSegment& a, const AxisSegment& b) {
  return segment_segment_distance(a.origin, a.end(), b.origin, b.end());
}

}  // namespace lbmp
