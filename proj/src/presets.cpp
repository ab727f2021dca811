#include "lbmp/presets.hpp"

#include <random>

#include "lbmp/util.hpp"

namespace lbmp {

namespace {

Obstacle static_bar(Vec2 a, Vec2 b) {
  Obstacle obs;
  obs.shape = BarShape{a, b};
  obs.trajectory.waypoints.push_back({0.0, {0.0, 0.0}});
  return obs;
}

}  // namespace

Scenario make_exp1_scenario() {
  Scenario s;
  s.workspace_size = 1.0;
  s.horizon = 100.0;
  s.v_max = 0.03;
  s.start = {0.0, 0.5};
  s.goal = {1.0, 0.5};
  s.obstacles.push_back(static_bar({0.2, 0.3}, {0.2, 1.0}));
  s.obstacles.push_back(static_bar({0.8, 0.3}, {0.8, 1.0}));
  validate_scenario(s);
  return s;
}

Scenario make_exp2_scenario() {
  Scenario s;
  s.workspace_size = 1.0;
  s.horizon = 60.0;
  s.v_max = 0.03;
  s.start = {0.0, 0.5};
  s.goal = {1.0, 0.5};
  Obstacle disc;
  disc.shape = DiscShape{0.25};
  // Center to past the left border at speed 0.02.
  disc.trajectory.waypoints.push_back({0.0, {0.5, 0.5}});
  disc.trajectory.waypoints.push_back({40.0, {-0.3, 0.5}});
  s.obstacles.push_back(std::move(disc));
  validate_scenario(s);
  return s;
}

Scenario make_exp3_scenario(std::uint64_t seed) {
  Scenario s;
  s.workspace_size = 1.0;
  s.horizon = 100.0;
  s.v_max = 0.03;
  s.start = {0.0, 0.5};
  s.goal = {1.0, 0.5};
  // Staggered gate: the only static passage runs diagonally through the
  // center region, above the left bar's tip and below the right bar's.
  s.obstacles.push_back(static_bar({0.25, 0.0}, {0.25, 0.6}));
  s.obstacles.push_back(static_bar({0.75, 0.4}, {0.75, 1.0}));

  const double radius = 0.15;
  const double speed = 0.02;
  std::mt19937_64 rng(seed);
  const Vec2 center{0.5, 0.5};
  for (int i = 0; i < 10; ++i) {
    Obstacle obs;
    obs.shape = DiscShape{radius};
    obs.trajectory.waypoints.push_back({0.0, center});
    double t = 0.0;
    Vec2 cur = center;
    while (t < s.horizon) {
      const Vec2 target{util::uniform_in(rng, radius, 1.0 - radius),
                        util::uniform_in(rng, radius, 1.0 - radius)};
      const double dist = distance(cur, target);
      if (dist < 1e-9) continue;
      t += dist / speed;
      obs.trajectory.waypoints.push_back({t, target});
      cur = target;
    }
    s.obstacles.push_back(std::move(obs));
  }
  validate_scenario(s);
  return s;
}

Scenario make_preset_scenario(const std::string& name, std::uint64_t seed, int num_obstacles,
                              double radius) {
  if (name == "exp1") return make_exp1_scenario();
  if (name == "exp2") return make_exp2_scenario();
  if (name == "exp3") return make_exp3_scenario(seed);
  if (name == "random") return generate_random_scenario(seed, num_obstacles, radius);
  throw ScenarioError("unknown preset: " + name);
}

}  // namespace lbmp
