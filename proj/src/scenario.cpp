#include "lbmp/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "lbmp/util.hpp"

namespace lbmp {

bool Obstacle::is_static() const {
  const auto& wps = trajectory.waypoints;
  for (std::size_t i = 1; i < wps.size(); ++i) {
    if (!(wps[i].offset == wps[0].offset)) return false;
  }
  return true;
}

Vec2 interpolate_pose(const Trajectory& tr, double t) {
  const auto& wps = tr.waypoints;
  if (t >= wps.back().t) return wps.back().offset;
  std::size_t hi = 1;
  while (wps[hi].t < t) ++hi;
  const auto& a = wps[hi - 1];
  const auto& b = wps[hi];
  const double u = (t - a.t) / (b.t - a.t);
  return a.offset + (b.offset - a.offset) * u;
}

Vec2 pose_at(const Trajectory& tr, double t, double horizon) {
  if (!(t >= 0.0 && t <= horizon)) {
    throw std::domain_error("pose_at: time " + std::to_string(t) + " outside [0," +
                            std::to_string(horizon) + "]");
  }
  return interpolate_pose(tr, t);
}

namespace {

void validate_trajectory_def(const Trajectory& tr, const std::string& path) {
  if (tr.waypoints.empty()) throw ScenarioError(path + ": at least one waypoint required");
  if (tr.waypoints.front().t != 0.0) {
    throw ScenarioError(path + ": first waypoint time must be exactly 0");
  }
  for (std::size_t i = 1; i < tr.waypoints.size(); ++i) {
    if (!(tr.waypoints[i].t > tr.waypoints[i - 1].t)) {
      throw ScenarioError(path + "[" + std::to_string(i) + "]: waypoint times must be strictly increasing");
    }
  }
}

void validate_shape(const ObstacleShape& shape, const std::string& path) {
  if (const auto* disc = std::get_if<DiscShape>(&shape)) {
    if (!(disc->radius > 0.0)) throw ScenarioError(path + ".radius: must be > 0");
    return;
  }
  if (const auto* poly = std::get_if<PolygonShape>(&shape)) {
    const auto& v = poly->vertices;
    if (v.size() < 3) throw ScenarioError(path + ".vertices: convex polygon needs >= 3 vertices");
    double area2 = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Vec2 a = v[i];
      const Vec2 b = v[(i + 1) % v.size()];
      const Vec2 c = v[(i + 2) % v.size()];
      if (cross(b - a, c - b) < -1e-12) {
        throw ScenarioError(path + ".vertices: must be convex and counter-clockwise");
      }
      area2 += cross(a, b);
    }
    if (!(area2 > 0.0)) throw ScenarioError(path + ".vertices: degenerate polygon");
    return;
  }
  const auto& bar = std::get<BarShape>(shape);
  if (bar.a == bar.b) throw ScenarioError(path + ": bar endpoints must be distinct");
}

}  // namespace

void validate_scenario(const Scenario& s) {
  if (!(s.workspace_size > 0.0)) throw ScenarioError("L: must be > 0");
  if (!(s.horizon > 0.0)) throw ScenarioError("T: must be > 0");
  if (!(s.v_max > 0.0)) throw ScenarioError("v_max: must be > 0");
  const double L = s.workspace_size;
  auto in_box = [L](Vec2 p) { return p.x >= 0.0 && p.x <= L && p.y >= 0.0 && p.y <= L; };
  if (!in_box(s.start)) throw ScenarioError("start: must lie inside the workspace");
  if (!in_box(s.goal)) throw ScenarioError("goal: must lie inside the workspace");
  for (std::size_t i = 0; i < s.obstacles.size(); ++i) {
    const std::string path = "obstacles[" + std::to_string(i) + "]";
    validate_shape(s.obstacles[i].shape, path);
    validate_trajectory_def(s.obstacles[i].trajectory, path + ".waypoints");
  }
}

namespace {

using json = nlohmann::ordered_json;

Vec2 parse_point(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ScenarioError(path + ": expected [x, y]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

double parse_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ScenarioError(path + ": expected a number");
  return j.get<double>();
}

void reject_unknown_fields(const json& obj, std::initializer_list<const char*> known,
                           const std::string& path) {
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* name : known) {
      if (item.key() == name) {
        ok = true;
        break;
      }
    }
    if (!ok) throw ScenarioError(path + ": unknown field '" + item.key() + "'");
  }
}

Obstacle parse_obstacle(const json& j, const std::string& path) {
  if (!j.is_object()) throw ScenarioError(path + ": expected an object");
  if (!j.contains("shape")) throw ScenarioError(path + ".shape: missing");
  const std::string kind = j.at("shape").is_string() ? j.at("shape").get<std::string>() : "";

  Obstacle obs;
  if (kind == "disc") {
    reject_unknown_fields(j, {"shape", "radius", "waypoints"}, path);
    if (!j.contains("radius")) throw ScenarioError(path + ".radius: missing");
    obs.shape = DiscShape{parse_number(j.at("radius"), path + ".radius")};
  } else if (kind == "polygon") {
    reject_unknown_fields(j, {"shape", "vertices", "waypoints"}, path);
    if (!j.contains("vertices") || !j.at("vertices").is_array()) {
      throw ScenarioError(path + ".vertices: missing or not an array");
    }
    PolygonShape poly;
    int vi = 0;
    for (const auto& v : j.at("vertices")) {
      poly.vertices.push_back(parse_point(v, path + ".vertices[" + std::to_string(vi++) + "]"));
    }
    obs.shape = std::move(poly);
  } else if (kind == "bar") {
    reject_unknown_fields(j, {"shape", "a", "b", "waypoints"}, path);
    if (!j.contains("a") || !j.contains("b")) throw ScenarioError(path + ": bar needs 'a' and 'b'");
    obs.shape = BarShape{parse_point(j.at("a"), path + ".a"), parse_point(j.at("b"), path + ".b")};
  } else {
    throw ScenarioError(path + ".shape: expected \"disc\", \"polygon\" or \"bar\"");
  }

  if (!j.contains("waypoints") || !j.at("waypoints").is_array() || j.at("waypoints").empty()) {
    throw ScenarioError(path + ".waypoints: missing or empty");
  }
  int wi = 0;
  for (const auto& w : j.at("waypoints")) {
    const std::string wpath = path + ".waypoints[" + std::to_string(wi++) + "]";
    if (!w.is_array() || w.size() != 3) throw ScenarioError(wpath + ": expected [t, dx, dy]");
    obs.trajectory.waypoints.push_back(
        {parse_number(w[0], wpath), {parse_number(w[1], wpath), parse_number(w[2], wpath)}});
  }
  return obs;
}

}  // namespace

Scenario load_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ScenarioError(std::string("parse error: ") + e.what());
  }
  if (!j.is_object()) throw ScenarioError("document: expected a JSON object");
  reject_unknown_fields(j, {"L", "T", "v_max", "start", "goal", "obstacles"}, "document");
  for (const char* field : {"L", "T", "v_max", "start", "goal", "obstacles"}) {
    if (!j.contains(field)) throw ScenarioError(std::string(field) + ": missing");
  }

  Scenario s;
  s.workspace_size = parse_number(j.at("L"), "L");
  s.horizon = parse_number(j.at("T"), "T");
  s.v_max = parse_number(j.at("v_max"), "v_max");
  s.start = parse_point(j.at("start"), "start");
  s.goal = parse_point(j.at("goal"), "goal");
  if (!j.at("obstacles").is_array()) throw ScenarioError("obstacles: expected an array");
  int i = 0;
  for (const auto& o : j.at("obstacles")) {
    s.obstacles.push_back(parse_obstacle(o, "obstacles[" + std::to_string(i++) + "]"));
  }
  validate_scenario(s);
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError("cannot open scenario file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_scenario(ss.str());
}

std::string save_scenario(const Scenario& s) {
  json j;
  j["L"] = s.workspace_size;
  j["T"] = s.horizon;
  j["v_max"] = s.v_max;
  j["start"] = {s.start.x, s.start.y};
  j["goal"] = {s.goal.x, s.goal.y};
  j["obstacles"] = json::array();
  for (const auto& obs : s.obstacles) {
    json o;
    if (const auto* disc = std::get_if<DiscShape>(&obs.shape)) {
      o["shape"] = "disc";
      o["radius"] = disc->radius;
    } else if (const auto* poly = std::get_if<PolygonShape>(&obs.shape)) {
      o["shape"] = "polygon";
      o["vertices"] = json::array();
      for (Vec2 v : poly->vertices) o["vertices"].push_back({v.x, v.y});
    } else {
      const auto& bar = std::get<BarShape>(obs.shape);
      o["shape"] = "bar";
      o["a"] = {bar.a.x, bar.a.y};
      o["b"] = {bar.b.x, bar.b.y};
    }
    o["waypoints"] = json::array();
    for (const auto& w : obs.trajectory.waypoints) {
      o["waypoints"].push_back({w.t, w.offset.x, w.offset.y});
    }
    j["obstacles"].push_back(std::move(o));
  }
  return j.dump(2) + "\n";
}

void save_scenario_file(const Scenario& s, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ScenarioError("cannot write scenario file: " + path);
  out << save_scenario(s);
}

Scenario generate_random_scenario(std::uint64_t seed, int num_obstacles, double radius,
                                  const RandomScenarioParams& params) {
  if (num_obstacles < 0) throw ScenarioError("num_obstacles: must be >= 0");
  if (num_obstacles > 0 && !(radius > 0.0)) throw ScenarioError("radius: must be > 0");
  const double L = params.workspace_size;
  if (radius >= L / 2.0 && num_obstacles > 0) {
    throw ScenarioError("radius: obstacle does not fit inside the workspace");
  }

  Scenario s;
  s.workspace_size = L;
  s.horizon = params.horizon;
  s.v_max = params.v_max;
  s.start = params.start;
  s.goal = params.goal;

  std::mt19937_64 rng(seed);
  const Vec2 center{L / 2.0, L / 2.0};
  for (int i = 0; i < num_obstacles; ++i) {
    Obstacle obs;
    obs.shape = DiscShape{radius};
    obs.trajectory.waypoints.push_back({0.0, center});
    double t = 0.0;
    Vec2 cur = center;
    while (t < params.horizon) {
      const Vec2 target{util::uniform_in(rng, radius, L - radius),
                        util::uniform_in(rng, radius, L - radius)};
      const double dist = distance(cur, target);
      if (dist < 1e-9) continue;
      t += dist / params.obstacle_speed;
      obs.trajectory.waypoints.push_back({t, target});
      cur = target;
    }
    s.obstacles.push_back(std::move(obs));
  }
  validate_scenario(s);
  return s;
}

}  // namespace lbmp
