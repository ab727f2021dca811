#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lbmp/baselines.hpp"
#include "lbmp/coverage.hpp"
#include "lbmp/intervals.hpp"
#include "lbmp/lbp_graph.hpp"
#include "lbmp/presets.hpp"
#include "lbmp/report.hpp"
#include "lbmp/scenario.hpp"
#include "lbmp/search.hpp"

namespace py = pybind11;
using namespace lbmp;

namespace {

py::tuple to_tuple(Vec2 v) { return py::make_tuple(v.x, v.y); }

py::object trajectory_to_py(const std::optional<RobotTrajectory>& traj) {
  if (!traj) return py::none();
  py::list samples;
  for (const auto& s : traj->samples) samples.append(py::make_tuple(s.t, s.p.x, s.p.y));
  py::dict out;
  out["cost"] = traj->total_cost;
  out["samples"] = samples;
  return out;
}

RobotTrajectory trajectory_from_py(const std::vector<std::tuple<double, double, double>>& samples) {
  RobotTrajectory traj;
  for (const auto& [t, x, y] : samples) traj.samples.push_back({t, {x, y}});
  if (!traj.samples.empty()) traj.total_cost = traj.samples.back().t;
  return traj;
}

double resolved_dt(const Scenario& scn, int n, double dt) {
  return dt > 0.0 ? dt : default_sample_step(scn, n);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Certified arrival-time lower bounds for 2D planning among moving obstacles";

  py::register_exception<ScenarioError>(m, "ScenarioError");

  py::class_<Scenario>(m, "Scenario")
      .def_readonly("L", &Scenario::workspace_size)
      .def_readonly("T", &Scenario::horizon)
      .def_readonly("v_max", &Scenario::v_max)
      .def_property_readonly("start", [](const Scenario& s) { return to_tuple(s.start); })
      .def_property_readonly("goal", [](const Scenario& s) { return to_tuple(s.goal); })
      .def_property_readonly("num_obstacles",
                             [](const Scenario& s) { return s.obstacles.size(); })
      .def("__repr__", [](const Scenario& s) {
        return "<Scenario L=" + std::to_string(s.workspace_size) +
               " T=" + std::to_string(s.horizon) +
               " obstacles=" + std::to_string(s.obstacles.size()) + ">";
      });

  m.def("load_scenario", &load_scenario, py::arg("text"));
  m.def("load_scenario_file", &load_scenario_file, py::arg("path"));
  m.def("save_scenario", &save_scenario, py::arg("scenario"));
  m.def("preset_scenario", &make_preset_scenario, py::arg("name"),
        py::arg("seed") = kExp3DefaultSeed, py::arg("num_obstacles") = 10,
        py::arg("radius") = 0.15);
  m.def(
      "generate_random_scenario",
      [](std::uint64_t seed, int num, double radius) {
        return generate_random_scenario(seed, num, radius);
      },
      py::arg("seed"), py::arg("num_obstacles"), py::arg("radius"));

  py::class_<LbpGraph>(m, "LbpGraph")
      .def_property_readonly("n", &LbpGraph::n)
      .def_property_readonly("k", &LbpGraph::k)
      .def_property_readonly("vertex_count", &LbpGraph::vertex_count)
      .def_property_readonly("sub_vertex_count", &LbpGraph::sub_vertex_count)
      .def_property_readonly("start_vertex", &LbpGraph::start_vertex)
      .def_property_readonly("goal_vertex", &LbpGraph::goal_vertex)
      .def_property_readonly("line_segment_count", &LbpGraph::line_segment_count)
      .def("neighbors",
           [](const LbpGraph& g, VertexId v) {
             py::list out;
             for (const auto& e : g.neighbors(v)) {
               out.append(py::make_tuple(e.to, e.cost, e.cell));
             }
             return out;
           })
      .def("edge_cost", &LbpGraph::edge_cost, py::arg("u"), py::arg("v"))
      .def("cell_of_edge", &LbpGraph::cell_of_edge, py::arg("u"), py::arg("v"));

  m.def("build_graph",
        [](const Scenario& scn, int n, int k) { return build_graph(scn, n, k); },
        py::arg("scenario"), py::arg("n"), py::arg("k"));

  py::class_<IntervalTable>(m, "IntervalTable")
      .def_property_readonly("horizon", &IntervalTable::horizon)
      .def_property_readonly("sample_step", &IntervalTable::sample_step)
      .def("vertex_intervals", [](const IntervalTable& t, VertexId v) {
        py::list out;
        for (const auto& iv : t.vertex_intervals(v)) out.append(py::make_tuple(iv.a, iv.b));
        return out;
      });

  m.def(
      "compute_reachable_intervals",
      [](const LbpGraph& g, const Scenario& scn, double dt) {
        return compute_reachable_intervals(g, scn, resolved_dt(scn, g.n(), dt));
      },
      py::arg("graph"), py::arg("scenario"), py::arg("dt") = -1.0);
  m.def("default_sample_step", &default_sample_step, py::arg("scenario"), py::arg("n"));

  m.def(
      "solve",
      [](const LbpGraph& g, const IntervalTable& table, bool expansion_constraint) {
        SearchOptions opts;
        opts.expansion_constraint = expansion_constraint;
        const SearchResult res = solve(g, table, opts);
        py::dict out;
        out["status"] = res.status == SearchStatus::Solved ? "solved" : "no_path";
        out["cost"] = res.cost;
        py::list path;
        for (const auto& e : res.path) path.append(py::make_tuple(e.vertex, e.arrival, e.wait));
        out["path"] = path;
        out["expansions"] = res.stats.expansions;
        out["generated"] = res.stats.generated;
        out["wall_ms"] = res.stats.wall_ms;
        return out;
      },
      py::arg("graph"), py::arg("table"), py::arg("expansion_constraint") = true);

  m.def(
      "baseline_lower_bound",
      [](const Scenario& scn) {
        const BaselineResult res = baseline_lower_bound(scn);
        py::dict out;
        out["reachable"] = res.reachable;
        out["cost"] = res.cost;
        py::list path;
        for (const auto& p : res.path) path.append(to_tuple(p));
        out["path"] = path;
        return out;
      },
      py::arg("scenario"));

  m.def(
      "sipp_plan",
      [](const Scenario& scn, int grid_n, double dt) {
        SippParams params;
        params.grid_n = grid_n;
        params.dt = dt;
        return trajectory_to_py(sipp_plan(scn, params));
      },
      py::arg("scenario"), py::arg("grid_n") = 40, py::arg("dt") = -1.0);

  m.def(
      "rrt_plan",
      [](const Scenario& scn, std::uint64_t seed, double step, int max_iters, double goal_bias,
         double wait_prob, double dt_check) {
        RrtParams params;
        params.step = step;
        params.max_iters = max_iters;
        params.goal_bias = goal_bias;
        params.wait_prob = wait_prob;
        params.dt_check = dt_check;
        return trajectory_to_py(rrt_plan(scn, seed, params));
      },
      py::arg("scenario"), py::arg("seed"), py::arg("step") = 0.1, py::arg("max_iters") = 30000,
      py::arg("goal_bias") = 0.05, py::arg("wait_prob") = 0.1, py::arg("dt_check") = -1.0);

  m.def(
      "validate_trajectory",
      [](const Scenario& scn, const std::vector<std::tuple<double, double, double>>& samples,
         double dt_check) {
        return validate_trajectory(scn, trajectory_from_py(samples),
                                   dt_check > 0.0 ? dt_check : default_check_step(scn));
      },
      py::arg("scenario"), py::arg("samples"), py::arg("dt_check") = -1.0);

  m.def(
      "optimality_gap",
      [](double upper, double lower) -> py::object {
        const auto gap = optimality_gap(upper, lower);
        if (!gap) return py::none();
        return py::float_(*gap);
      },
      py::arg("upper"), py::arg("lower"));

  m.def(
      "compute_report",
      [](const Scenario& scn, const std::string& id, int n, int k, double dt, int grid_n,
         std::vector<std::uint64_t> rrt_seeds) {
        ReportConfig config;
        config.n = n;
        config.k = k;
        config.dt = dt;
        config.grid_n = grid_n;
        config.rrt_seeds = std::move(rrt_seeds);
        return compute_report(scn, id, config).to_json();
      },
      py::arg("scenario"), py::arg("scenario_id") = "scenario", py::arg("n") = 20,
      py::arg("k") = 25, py::arg("dt") = -1.0, py::arg("grid_n") = 40,
      py::arg("rrt_seeds") = std::vector<std::uint64_t>{1});
}
