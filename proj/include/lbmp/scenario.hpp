#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "lbmp/geom.hpp"

namespace lbmp {

struct Waypoint {
  double t = 0.0;
  Vec2 offset;
};

// Piecewise-linear translation schedule for an obstacle. The first
// waypoint must sit at t = 0; the pose is held constant after the last
// waypoint, so a single waypoint describes a static obstacle.
struct Trajectory {
  std::vector<Waypoint> waypoints;
};

struct DiscShape {
  double radius = 0.0;  // body frame center is the origin
};

// Convex, counter-clockwise vertex loop in the body frame.
struct PolygonShape {
  std::vector<Vec2> vertices;
};

// Zero-width closed segment in the body frame.
struct BarShape {
  Vec2 a, b;
};

using ObstacleShape = std::variant<DiscShape, PolygonShape, BarShape>;

struct Obstacle {
  ObstacleShape shape;
  Trajectory trajectory;

  bool is_static() const;
};

struct Scenario {
  double workspace_size = 1.0;  // L, workspace is [0,L] x [0,L]
  double horizon = 1.0;         // T, seconds
  double v_max = 1.0;           // robot speed limit, length/second
  Vec2 start;
  Vec2 goal;
  std::vector<Obstacle> obstacles;
};

struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Linear interpolation between bracketing waypoints, constant at and
// beyond the last waypoint. No domain check; callers stay in [0,T].
Vec2 interpolate_pose(const Trajectory& tr, double t);

// Checked variant: throws std::domain_error when t is outside [0,horizon].
Vec2 pose_at(const Trajectory& tr, double t, double horizon);

// Throws ScenarioError naming the offending field on the first violated
// invariant.
void validate_scenario(const Scenario& s);

Scenario load_scenario(const std::string& text);
Scenario load_scenario_file(const std::string& path);
std::string save_scenario(const Scenario& s);
void save_scenario_file(const Scenario& s, const std::string& path);

struct RandomScenarioParams {
  double workspace_size = 1.0;
  double horizon = 80.0;
  double v_max = 0.03;
  Vec2 start{0.05, 0.05};
  Vec2 goal{0.95, 0.95};
  double obstacle_speed = 0.02;
};

// Disc obstacles released from the workspace center, wandering between
// uniformly sampled targets at constant speed. Pure function of its
// arguments.
Scenario generate_random_scenario(std::uint64_t seed, int num_obstacles, double radius,
                                  const RandomScenarioParams& params = {});

struct TimedPoint {
  double t = 0.0;
  Vec2 p;
};

// Piecewise-linear robot motion; total_cost is the arrival time at the
// final sample.
struct RobotTrajectory {
  std::vector<TimedPoint> samples;
  double total_cost = 0.0;
};

}  // namespace lbmp
