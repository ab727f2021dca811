#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "lbmp/intervals.hpp"
#include "lbmp/presets.hpp"
#include "lbmp/scenario.hpp"

using namespace lbmp;

TEST_CASE("pose_at interpolates waypoints") {
  SUBCASE("single waypoint holds the pose") {
    Trajectory tr{{{0.0, {0.5, 0.5}}}};
    const Vec2 p = pose_at(tr, 7.0, 10.0);
    CHECK(p.x == 0.5);
    CHECK(p.y == 0.5);
  }
  SUBCASE("midpoint of a linear segment") {
    Trajectory tr{{{0.0, {0.5, 0.5}}, {10.0, {0.1, 0.5}}}};
    const Vec2 p = pose_at(tr, 5.0, 10.0);
    CHECK(p.x == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(p.y == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("interpolation within the second leg") {
    Trajectory tr{{{0.0, {0.0, 0.0}}, {4.0, {0.2, 0.0}}, {8.0, {0.2, 0.4}}}};
    const Vec2 p = pose_at(tr, 6.0, 8.0);
    CHECK(p.x == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(p.y == doctest::Approx(0.2).epsilon(1e-12));
  }
  SUBCASE("constant beyond the last waypoint") {
    Trajectory tr{{{0.0, {0.0, 0.0}}, {4.0, {0.2, 0.0}}}};
    const Vec2 p = pose_at(tr, 9.0, 10.0);
    CHECK(p.x == 0.2);
  }
  SUBCASE("outside [0,T] is a domain error") {
    Trajectory tr{{{0.0, {0.5, 0.5}}}};
    CHECK_THROWS_AS(pose_at(tr, -0.1, 10.0), std::domain_error);
    CHECK_THROWS_AS(pose_at(tr, 10.1, 10.0), std::domain_error);
  }
}

TEST_CASE("pose_at is continuous under the waypoint speed bound") {
  const Scenario s = make_exp2_scenario();
  const auto& tr = s.obstacles[0].trajectory;
  const double v = obstacle_max_speed(s);
  const double eps = 1e-4;
  for (int i = 0; i < 2000; ++i) {
    const double t = (s.horizon - eps) * i / 2000.0;
    CHECK(distance(interpolate_pose(tr, t), interpolate_pose(tr, t + eps)) <= v * eps + 1e-12);
  }
}

TEST_CASE("load_scenario accepts the shipped documents") {
  SUBCASE("one-disc crossing scene") {
    const Scenario s = load_scenario(save_scenario(make_exp2_scenario()));
    REQUIRE(s.obstacles.size() == 1);
    const auto* disc = std::get_if<DiscShape>(&s.obstacles[0].shape);
    REQUIRE(disc != nullptr);
    CHECK(disc->radius == 0.25);
    CHECK(s.start.x == 0.0);
    CHECK(s.start.y == 0.5);
    CHECK(s.goal.x == 1.0);
    CHECK_FALSE(s.obstacles[0].is_static());
  }
  SUBCASE("two static bars") {
    const Scenario s = load_scenario(save_scenario(make_exp1_scenario()));
    REQUIRE(s.obstacles.size() == 2);
    for (const auto& obs : s.obstacles) {
      CHECK(std::holds_alternative<BarShape>(obs.shape));
      CHECK(obs.is_static());
    }
  }
}

TEST_CASE("load_scenario rejects invalid documents") {
  const char* zero_vmax = R"({"L":1,"T":10,"v_max":0,"start":[0,0.5],"goal":[1,0.5],"obstacles":[]})";
  CHECK_THROWS_WITH_AS(load_scenario(zero_vmax), "v_max: must be > 0", ScenarioError);

  const char* unknown = R"({"L":1,"T":10,"v_max":0.03,"start":[0,0.5],"goal":[1,0.5],"obstacles":[],"extra":1})";
  CHECK_THROWS_AS(load_scenario(unknown), ScenarioError);

  const char* bad_shape =
      R"({"L":1,"T":10,"v_max":0.03,"start":[0,0.5],"goal":[1,0.5],
          "obstacles":[{"shape":"blob","waypoints":[[0,0,0]]}]})";
  CHECK_THROWS_AS(load_scenario(bad_shape), ScenarioError);

  const char* late_start =
      R"({"L":1,"T":10,"v_max":0.03,"start":[0,0.5],"goal":[1,0.5],
          "obstacles":[{"shape":"disc","radius":0.1,"waypoints":[[1,0.5,0.5]]}]})";
  CHECK_THROWS_AS(load_scenario(late_start), ScenarioError);

  const char* outside =
      R"({"L":1,"T":10,"v_max":0.03,"start":[-0.2,0.5],"goal":[1,0.5],"obstacles":[]})";
  CHECK_THROWS_AS(load_scenario(outside), ScenarioError);

  CHECK_THROWS_AS(load_scenario("not json"), ScenarioError);
}

TEST_CASE("scenario serialization round-trips") {
  const Scenario a = generate_random_scenario(3, 5, 0.12);
  const std::string text = save_scenario(a);
  const Scenario b = load_scenario(text);
  CHECK(save_scenario(b) == text);
  CHECK(b.obstacles.size() == a.obstacles.size());
  CHECK(b.horizon == a.horizon);
  for (std::size_t i = 0; i < a.obstacles.size(); ++i) {
    const auto& wa = a.obstacles[i].trajectory.waypoints;
    const auto& wb = b.obstacles[i].trajectory.waypoints;
    REQUIRE(wa.size() == wb.size());
    for (std::size_t j = 0; j < wa.size(); ++j) {
      CHECK(wa[j].t == wb[j].t);
      CHECK(wa[j].offset == wb[j].offset);
    }
  }
}

TEST_CASE("generate_random_scenario is a pure function of its arguments") {
  const Scenario a = generate_random_scenario(1, 10, 0.15);
  const Scenario b = generate_random_scenario(1, 10, 0.15);
  CHECK(save_scenario(a) == save_scenario(b));

  REQUIRE(a.obstacles.size() == 10);
  for (const auto& obs : a.obstacles) {
    CHECK(std::holds_alternative<DiscShape>(obs.shape));
    CHECK(obs.trajectory.waypoints.front().offset == Vec2{0.5, 0.5});
    // Discs stay inside the workspace.
    for (const auto& wp : obs.trajectory.waypoints) {
      CHECK(wp.offset.x >= 0.15);
      CHECK(wp.offset.x <= 0.85);
      CHECK(wp.offset.y >= 0.15);
      CHECK(wp.offset.y <= 0.85);
    }
  }

  const Scenario c = generate_random_scenario(2, 10, 0.15);
  CHECK(save_scenario(a) != save_scenario(c));

  CHECK(generate_random_scenario(5, 0, 0.15).obstacles.empty());
}

TEST_CASE("exp3 preset is deterministic per seed") {
  CHECK(save_scenario(make_exp3_scenario(7)) == save_scenario(make_exp3_scenario(7)));
  CHECK(save_scenario(make_exp3_scenario(7)) != save_scenario(make_exp3_scenario(8)));
  const Scenario s = make_exp3_scenario();
  int bars = 0, discs = 0;
  for (const auto& obs : s.obstacles) {
    if (std::holds_alternative<BarShape>(obs.shape)) ++bars;
    if (std::holds_alternative<DiscShape>(obs.shape)) ++discs;
  }
  CHECK(bars == 2);
  CHECK(discs == 10);
}
