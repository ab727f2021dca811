#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lbmp/baselines.hpp"
#include "lbmp/coverage.hpp"
#include "lbmp/intervals.hpp"
#include "lbmp/lbp_graph.hpp"
#include "lbmp/presets.hpp"
#include "lbmp/report.hpp"
#include "lbmp/scenario.hpp"
#include "lbmp/search.hpp"

namespace {

constexpr int kExitSolved = 0;
constexpr int kExitNoPath = 2;
constexpr int kExitInputError = 3;
constexpr int kExitInvariantViolation = 4;

struct CommonArgs {
  std::string scenario_path;
  int n = 20;
  int k = 25;
  double dt = -1.0;
  std::string expansion_constraint = "on";
  int grid_n = 40;
  std::uint64_t seed = 1;
  std::string out_path;
  std::string format = "text";
};

lbmp::Scenario load(const CommonArgs& args) {
  return lbmp::load_scenario_file(args.scenario_path);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

std::string format_number(double v) {
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(9);
  ss << v;
  return ss.str();
}

std::string trajectory_csv(const lbmp::RobotTrajectory& traj) {
  std::ostringstream ss;
  ss << "t,x,y\n";
  for (const auto& s : traj.samples) {
    ss << format_number(s.t) << ',' << format_number(s.p.x) << ',' << format_number(s.p.y) << '\n';
  }
  return ss.str();
}

// Representative waypoints of a relaxed solution path: the dwell point
// of each vertex is the sub-segment point nearest the previous one.
std::string search_path_csv(const lbmp::LbpGraph& g, const lbmp::SearchResult& res) {
  std::ostringstream ss;
  ss << "t,x,y,vertex,wait\n";
  lbmp::Vec2 prev = g.start_point();
  for (const auto& entry : res.path) {
    const auto seg = g.sub_segment_geometry(entry.vertex);
    lbmp::Vec2 p = seg.origin;
    if (!seg.degenerate()) {
      const lbmp::Vec2 d = seg.end() - seg.origin;
      const double u = std::clamp((prev - seg.origin).dot(d) / d.norm2(), 0.0, 1.0);
      p = seg.point_at(u);
    }
    ss << format_number(entry.arrival) << ',' << format_number(p.x) << ',' << format_number(p.y)
       << ',' << entry.vertex << ',' << format_number(entry.wait) << '\n';
    prev = p;
  }
  return ss.str();
}

int run_generate(const std::string& preset, std::uint64_t seed, int num, double radius,
                 const std::string& out_path) {
  const lbmp::Scenario s = lbmp::make_preset_scenario(preset, seed, num, radius);
  const std::string text = lbmp::save_scenario(s);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_file(out_path, text);
    std::cout << "wrote " << out_path << "\n";
  }
  return kExitSolved;
}

int run_lowerbound(const CommonArgs& args, const std::string& dump_graph,
                   const std::string& dump_intervals) {
  const lbmp::Scenario scenario = load(args);
  const double dt = args.dt > 0.0 ? args.dt : lbmp::default_sample_step(scenario, args.n);
  const lbmp::LbpGraph graph = lbmp::build_graph(scenario, args.n, args.k);
  const lbmp::IntervalTable table = lbmp::compute_reachable_intervals(graph, scenario, dt);

  if (!dump_graph.empty()) {
    std::ofstream out(dump_graph);
    graph.dump_edges(out);
  }
  if (!dump_intervals.empty()) {
    std::ostringstream ss;
    ss << "line_segment_id,t_start,t_end\n";
    for (int ls = 0; ls < graph.line_segment_count(); ++ls) {
      for (const auto& iv : table.line_segment_intervals(ls)) {
        ss << ls << ',' << format_number(iv.a) << ',' << format_number(iv.b) << '\n';
      }
    }
    write_file(dump_intervals, ss.str());
  }

  lbmp::SearchOptions opts;
  opts.expansion_constraint = args.expansion_constraint != "off";
  const lbmp::SearchResult res = lbmp::solve(graph, table, opts);

  if (args.format == "json") {
    nlohmann::ordered_json j;
    j["status"] = res.status == lbmp::SearchStatus::Solved ? "solved" : "no_path";
    if (res.status == lbmp::SearchStatus::Solved) j["cost"] = res.cost;
    j["n"] = args.n;
    j["k"] = args.k;
    j["dt"] = dt;
    j["expansion_constraint"] = opts.expansion_constraint;
    j["expansions"] = res.stats.expansions;
    j["generated"] = res.stats.generated;
    j["wall_ms"] = res.stats.wall_ms;
    std::cout << j.dump(2) << "\n";
  } else if (args.format == "csv") {
    std::cout << "n,k,cost,expansions,wall_ms\n" << args.n << ',' << args.k << ',';
    if (res.status == lbmp::SearchStatus::Solved) {
      std::cout << format_number(res.cost);
    } else {
      std::cout << "no_path";
    }
    std::cout << ',' << res.stats.expansions << ',' << format_number(res.stats.wall_ms) << "\n";
  } else {
    std::cout << "status " << (res.status == lbmp::SearchStatus::Solved ? "solved" : "no_path")
              << "\n";
    if (res.status == lbmp::SearchStatus::Solved) {
      std::cout << "cost " << format_number(res.cost) << "\n";
    }
    std::cout << "expansions " << res.stats.expansions << "\n";
    std::cout << "wall_ms " << format_number(res.stats.wall_ms) << "\n";
  }
  if (!args.out_path.empty() && res.status == lbmp::SearchStatus::Solved) {
    write_file(args.out_path, search_path_csv(graph, res));
  }
  return res.status == lbmp::SearchStatus::Solved ? kExitSolved : kExitNoPath;
}

int run_sweep(const CommonArgs& args, std::vector<int> ns, std::vector<int> ks) {
  const lbmp::Scenario scenario = load(args);
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

  std::ostringstream csv;
  csv << "n,k,cost,expansions,wall_ms\n";
  lbmp::SearchOptions opts;
  opts.expansion_constraint = args.expansion_constraint != "off";
  for (int n : ns) {
    const double dt = args.dt > 0.0 ? args.dt : lbmp::default_sample_step(scenario, n);
    lbmp::IntervalTable table;
    for (int k : ks) {
      const lbmp::LbpGraph graph = lbmp::build_graph(scenario, n, k);
      // The table depends on n and dt only; compute it for the first k.
      if (k == ks.front()) table = lbmp::compute_reachable_intervals(graph, scenario, dt);
      const lbmp::SearchResult res = lbmp::solve(graph, table.rebind(graph), opts);
      csv << n << ',' << k << ',';
      if (res.status == lbmp::SearchStatus::Solved) {
        csv << format_number(res.cost);
      } else {
        csv << "no_path";
      }
      csv << ',' << res.stats.expansions << ',' << format_number(res.stats.wall_ms) << '\n';
    }
  }
  if (args.out_path.empty()) {
    std::cout << csv.str();
  } else {
    write_file(args.out_path, csv.str());
    std::cout << "wrote " << args.out_path << "\n";
  }
  return kExitSolved;
}

int run_baseline(const CommonArgs& args) {
  const lbmp::Scenario scenario = load(args);
  const lbmp::BaselineResult res = lbmp::baseline_lower_bound(scenario);
  if (!res.reachable) {
    std::cout << "status unbounded\n";
    return kExitNoPath;
  }
  std::cout << "status solved\n";
  std::cout << "cost " << format_number(res.cost) << "\n";
  if (!args.out_path.empty()) {
    std::ostringstream ss;
    ss << "x,y\n";
    for (const auto& p : res.path) ss << format_number(p.x) << ',' << format_number(p.y) << '\n';
    write_file(args.out_path, ss.str());
  }
  return kExitSolved;
}

int run_sipp(const CommonArgs& args) {
  const lbmp::Scenario scenario = load(args);
  lbmp::SippParams params;
  params.grid_n = args.grid_n;
  if (args.dt > 0.0) params.dt = args.dt;
  const auto traj = lbmp::sipp_plan(scenario, params);
  if (!traj) {
    std::cout << "status no_path\n";
    return kExitNoPath;
  }
  const bool valid = lbmp::validate_trajectory(scenario, *traj, lbmp::default_check_step(scenario));
  std::cout << "status solved\n";
  std::cout << "cost " << format_number(traj->total_cost) << "\n";
  std::cout << "valid " << (valid ? "true" : "false") << "\n";
  if (!args.out_path.empty()) write_file(args.out_path, trajectory_csv(*traj));
  return kExitSolved;
}

int run_rrt(const CommonArgs& args) {
  const lbmp::Scenario scenario = load(args);
  const auto traj = lbmp::rrt_plan(scenario, args.seed);
  if (!traj) {
    std::cout << "status no_path\n";
    return kExitNoPath;
  }
  const bool valid = lbmp::validate_trajectory(scenario, *traj, lbmp::default_check_step(scenario));
  std::cout << "status solved\n";
  std::cout << "cost " << format_number(traj->total_cost) << "\n";
  std::cout << "valid " << (valid ? "true" : "false") << "\n";
  if (!args.out_path.empty()) write_file(args.out_path, trajectory_csv(*traj));
  return kExitSolved;
}

int run_report(const CommonArgs& args) {
  const lbmp::Scenario scenario = load(args);
  lbmp::ReportConfig config;
  config.n = args.n;
  config.k = args.k;
  config.dt = args.dt;
  config.grid_n = args.grid_n;
  config.rrt_seeds = {args.seed};
  const lbmp::BoundReport report = lbmp::compute_report(scenario, args.scenario_path, config);
  std::cout << (args.format == "json" ? report.to_json() : report.to_text());
  if (!args.out_path.empty()) write_file(args.out_path, report.to_json());
  return kExitSolved;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified arrival-time lower bounds for planning among moving obstacles"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string preset = "random";
  int gen_num = 10;
  double gen_radius = 0.15;
  std::vector<int> sweep_ns{10, 20};
  std::vector<int> sweep_ks{5, 10, 15, 20, 25};
  std::string dump_graph, dump_intervals;

  auto add_scenario_flag = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", args.scenario_path, "scenario JSON file")->required();
  };

  CLI::App* generate = app.add_subcommand("generate", "write a scenario file");
  generate->add_option("preset", preset, "exp1|exp2|exp3|random")->required();
  generate->add_option("--seed", args.seed, "random seed");
  generate->add_option("--num", gen_num, "obstacle count (random preset)");
  generate->add_option("--radius", gen_radius, "disc radius (random preset)");
  generate->add_option("--out", args.out_path, "output path (default stdout)");

  CLI::App* lowerbound = app.add_subcommand("lowerbound", "relaxed-search lower bound");
  add_scenario_flag(lowerbound);
  lowerbound->add_option("--n", args.n, "cells per side");
  lowerbound->add_option("--k", args.k, "sub-segments per boundary");
  lowerbound->add_option("--dt", args.dt, "coverage sampling step");
  lowerbound->add_option("--expansion-constraint", args.expansion_constraint, "on|off")
      ->check(CLI::IsMember({"on", "off"}));
  lowerbound->add_option("--out", args.out_path, "solution path CSV");
  lowerbound->add_option("--format", args.format, "text|csv|json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  lowerbound->add_option("--dump-graph", dump_graph, "edge list CSV (diagnostics)");
  lowerbound->add_option("--dump-intervals", dump_intervals, "reachable interval CSV");

  CLI::App* sweep = app.add_subcommand("sweep", "lower bounds over an (n,k) grid");
  add_scenario_flag(sweep);
  sweep->add_option("--n", sweep_ns, "cells-per-side list")->delimiter(',');
  sweep->add_option("--k", sweep_ks, "sub-segment list")->delimiter(',');
  sweep->add_option("--dt", args.dt, "coverage sampling step");
  sweep->add_option("--expansion-constraint", args.expansion_constraint, "on|off")
      ->check(CLI::IsMember({"on", "off"}));
  sweep->add_option("--out", args.out_path, "CSV output path (default stdout)");

  CLI::App* baseline = app.add_subcommand("baseline", "static visibility-graph lower bound");
  add_scenario_flag(baseline);
  baseline->add_option("--out", args.out_path, "path CSV");

  CLI::App* sipp = app.add_subcommand("sipp", "safe-interval grid upper bound");
  add_scenario_flag(sipp);
  sipp->add_option("--grid-n", args.grid_n, "grid cells per side");
  sipp->add_option("--dt", args.dt, "safe-interval sampling step");
  sipp->add_option("--out", args.out_path, "trajectory CSV");

  CLI::App* rrt = app.add_subcommand("rrt", "sampled space-time upper bound");
  add_scenario_flag(rrt);
  rrt->add_option("--seed", args.seed, "random seed");
  rrt->add_option("--out", args.out_path, "trajectory CSV");

  CLI::App* report = app.add_subcommand("report", "bounds and optimality-gap estimates");
  add_scenario_flag(report);
  report->add_option("--n", args.n, "cells per side");
  report->add_option("--k", args.k, "sub-segments per boundary");
  report->add_option("--dt", args.dt, "coverage sampling step");
  report->add_option("--grid-n", args.grid_n, "feasible planner grid");
  report->add_option("--seed", args.seed, "rrt seed");
  report->add_option("--out", args.out_path, "report JSON path");
  report->add_option("--format", args.format, "text|json")->check(CLI::IsMember({"text", "json"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      return run_generate(preset, args.seed, gen_num, gen_radius, args.out_path);
    }
    if (lowerbound->parsed()) return run_lowerbound(args, dump_graph, dump_intervals);
    if (sweep->parsed()) return run_sweep(args, sweep_ns, sweep_ks);
    if (baseline->parsed()) return run_baseline(args);
    if (sipp->parsed()) return run_sipp(args);
    if (rrt->parsed()) return run_rrt(args);
    if (report->parsed()) return run_report(args);
  } catch (const lbmp::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariantViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
