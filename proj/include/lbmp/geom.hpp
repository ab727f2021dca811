#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace lbmp {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  bool operator==(const Vec2&) const = default;

  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double norm2() const { return x * x + y * y; }
  double norm() const { return std::hypot(x, y); }
};

inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

enum class Axis : std::uint8_t { Horizontal, Vertical };

// Closed axis-aligned segment parameterized by u in [0,1]. length == 0
// encodes the degenerate single-point segments used for the start and
// goal vertices.
struct AxisSegment {
  Vec2 origin;
  Axis axis = Axis::Horizontal;
  double length = 0.0;

  bool degenerate() const { return length == 0.0; }
  Vec2 point_at(double u) const {
    return axis == Axis::Horizontal ? Vec2{origin.x + u * length, origin.y}
                                    : Vec2{origin.x, origin.y + u * length};
  }
  Vec2 end() const { return point_at(1.0); }
  Vec2 direction() const {
    return axis == Axis::Horizontal ? Vec2{length, 0.0} : Vec2{0.0, length};
  }
};

// Closed parameter interval [lo,hi] within [0,1] along an AxisSegment.
struct CoverInterval {
  double lo = 0.0;
  double hi = 0.0;
};

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);
double segment_segment_distance(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1);

// Minimum Euclidean distance between two closed axis-aligned segments
// (0 if they touch or intersect). Degenerate segments behave as points.
double min_distance(const AxisSegment& a, const AxisSegment& b);

// True iff the two segments intersect, endpoints and collinear overlap
// included.
bool segments_intersect(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1);

// True iff the open interiors cross transversally. Touching at an
// endpoint or collinear overlap does not count.
bool segments_properly_cross(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1);

}  // namespace lbmp
