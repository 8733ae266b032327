#include "uavplan/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "uavplan/montecarlo.hpp"
#include "uavplan/planner.hpp"
#include "uavplan/scenario_io.hpp"
#include "uavplan/single_sensor.hpp"

namespace uavplan {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

unsigned threads_from_env() {
  const char* env = std::getenv("UAVPLAN_THREADS");
  if (!env) return 0;
  const long v = std::strtol(env, nullptr, 10);
  return v > 0 ? static_cast<unsigned>(v) : 0;
}

void emit_error(const std::string& kind, const std::string& message) {
  nlohmann::ordered_json j;
  j["error"] = {{"kind", kind}, {"message", message}};
  std::cerr << j.dump() << "\n";
}

struct PlanArgs {
  std::string scenario_path;
  std::string out_path;
  int grid_override = 0;
  bool no_prune = false;
};

struct SweepArgs {
  std::string scenario_path;
  std::string out_path;
  std::string param;
  double from = 0.0;
  double to = 0.0;
  int steps = 0;
  int grid_override = 0;
};

struct McArgs {
  std::string config_path;
  std::string out_path;
  std::string solver;
};

struct BaselineArgs {
  std::string scenario_path;
  std::string out_path;
  std::string kind;
  int grid_override = 0;
};

int do_plan(const PlanArgs& a) {
  ScenarioDocument doc = parse_scenario(a.scenario_path);
  if (a.grid_override) doc.solver.grid_points = a.grid_override;
  doc.solver.threads = threads_from_env();
  const Grid grid = Grid::make(doc.scenario.s_start_m, doc.scenario.s_end_m,
                               doc.solver.grid_points);
  const DpResult res = a.no_prune ? dp_solve(doc.scenario, grid, doc.solver)
                                  : dp_solve_pruned(doc.scenario, grid, doc.solver);
  PlanReportMeta meta;
  meta.algorithm = a.no_prune ? "dp" : "dp_pruned";
  meta.grid_points = doc.solver.grid_points;
  meta.search_points = res.table.points_m.size();
  meta.speed_tol_mps = doc.solver.speed_tol_mps;
  meta.hover_tol_rel = doc.solver.hover_tol_rel;
  meta.states_evaluated = res.stats.states_evaluated;
  meta.states_copied = res.stats.states_copied;
  meta.stage_cost_evals = res.stats.stage_cost_evals;
  write_text_file(a.out_path,
                  plan_report(doc.scenario, doc.solver, res.plan, meta).dump(2) + "\n");
  return kExitOk;
}

int do_sweep(const SweepArgs& a) {
  ScenarioDocument doc = parse_scenario(a.scenario_path);
  if (a.grid_override) doc.solver.grid_points = a.grid_override;
  doc.solver.threads = threads_from_env();
  if (doc.scenario.sensors.size() != 1)
    throw std::invalid_argument("sweep: scenario must contain exactly one sensor");
  if (a.steps < 1) throw std::invalid_argument("sweep: --steps must be >= 1");

  std::vector<SweepRow> rows;
  for (int i = 0; i < a.steps; ++i) {
    const double value =
        a.steps == 1 ? a.from
                     : a.from + (a.to - a.from) * i / (a.steps - 1);
    Scenario sc = doc.scenario;
    if (a.param == "B")
      sc.sensors[0].bits = value;
    else
      sc.sensors[0].energy_j = value;
    const PlanSegment seg = single_sensor_plan(sc, doc.solver);
    SweepRow row;
    row.param = value;
    row.x_m = seg.interval.x_m;
    row.y_m = seg.interval.y_m;
    row.v_mps = seg.speed_mps.value_or(0.0);
    row.mode = seg.mode;
    row.total_time_s = single_sensor_total_time(sc, seg);
    rows.push_back(row);
  }
  write_text_file(a.out_path, sweep_csv(rows));
  return kExitOk;
}

int do_montecarlo(const McArgs& a) {
  MonteCarloDocument doc = parse_montecarlo_config(a.config_path);
  doc.solver.threads = threads_from_env();
  SolverKind kind;
  if (a.solver == "dp")
    kind = SolverKind::dp;
  else if (a.solver == "hover")
    kind = SolverKind::hover_only;
  else
    kind = SolverKind::always_collecting;
  const SweepResult res =
      sweep_average_time(doc.config, doc.param, doc.values, kind, doc.solver);
  write_text_file(a.out_path, curve_csv(res.points));
  for (std::size_t i = 0; i < res.points.size(); ++i) {
    const CurvePoint& p = res.points[i];
    if (p.trials_succeeded != p.trials_total)
      std::cerr << "warning: sweep point " << format_csv_value(p.param_value)
                << " had " << (p.trials_total - p.trials_succeeded)
                << " infeasible trial(s)\n";
  }
  return kExitOk;
}

int do_baseline(const BaselineArgs& a) {
  ScenarioDocument doc = parse_scenario(a.scenario_path);
  if (a.grid_override) doc.solver.grid_points = a.grid_override;
  doc.solver.threads = threads_from_env();
  FlightPlan plan;
  PlanReportMeta meta;
  meta.grid_points = doc.solver.grid_points;
  meta.speed_tol_mps = doc.solver.speed_tol_mps;
  meta.hover_tol_rel = doc.solver.hover_tol_rel;
  if (a.kind == "hover") {
    plan = baseline_hover_only(doc.scenario, doc.solver);
    meta.algorithm = "hover_only";
  } else {
    const Grid grid = Grid::make(doc.scenario.s_start_m, doc.scenario.s_end_m,
                                 doc.solver.grid_points);
    plan = baseline_always_collecting(doc.scenario, grid, doc.solver);
    meta.algorithm = "always_collecting";
    meta.search_points = plan_search_points(doc.scenario, grid).size();
  }
  write_text_file(a.out_path,
                  plan_report(doc.scenario, doc.solver, plan, meta).dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"UAV data-collection flight planner"};
  app.require_subcommand(1);

  PlanArgs plan_args;
  auto* plan = app.add_subcommand(
      "plan", "Minimum-flight-time plan for a scenario file");
  plan->add_option("--scenario", plan_args.scenario_path, "Scenario JSON file")
      ->required();
  plan->add_option("--grid", plan_args.grid_override,
                   "Override the number of grid points");
  plan->add_flag("--no-prune", plan_args.no_prune,
                 "Evaluate every state instead of copying plateaus");
  plan->add_option("--out", plan_args.out_path, "Plan report output path")
      ->required();

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand(
      "sweep", "Single-sensor sweep over the data or energy parameter");
  sweep->add_option("--scenario", sweep_args.scenario_path, "Scenario JSON file")
      ->required();
  sweep->add_option("--param", sweep_args.param, "Swept parameter: B or E")
      ->required()
      ->check(CLI::IsMember({"B", "E"}));
  sweep->add_option("--from", sweep_args.from, "First value")->required();
  sweep->add_option("--to", sweep_args.to, "Last value")->required();
  sweep->add_option("--steps", sweep_args.steps, "Number of sweep points")
      ->required();
  sweep->add_option("--grid", sweep_args.grid_override,
                    "Override the number of grid points");
  sweep->add_option("--out", sweep_args.out_path, "CSV output path")->required();

  McArgs mc_args;
  auto* mc = app.add_subcommand("montecarlo",
                                "Averaged flight times over random ensembles");
  mc->add_option("--config", mc_args.config_path, "Ensemble config JSON file")
      ->required();
  mc->add_option("--solver", mc_args.solver, "Solver: dp, hover or always")
      ->required()
      ->check(CLI::IsMember({"dp", "hover", "always"}));
  mc->add_option("--out", mc_args.out_path, "CSV output path")->required();

  BaselineArgs base_args;
  auto* base = app.add_subcommand("baseline", "Reference policies");
  base->add_option("--scenario", base_args.scenario_path, "Scenario JSON file")
      ->required();
  base->add_option("--kind", base_args.kind, "Baseline: hover or always")
      ->required()
      ->check(CLI::IsMember({"hover", "always"}));
  base->add_option("--grid", base_args.grid_override,
                   "Override the number of grid points");
  base->add_option("--out", base_args.out_path, "Plan report output path")
      ->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    emit_error("usage", e.what());
    return kExitError;
  }

  try {
    if (plan->parsed()) return do_plan(plan_args);
    if (sweep->parsed()) return do_sweep(sweep_args);
    if (mc->parsed()) return do_montecarlo(mc_args);
    return do_baseline(base_args);
  } catch (const InfeasibleError& e) {
    emit_error("infeasible", e.what());
    return kExitInfeasible;
  } catch (const ParseError& e) {
    emit_error("parse", e.what());
    return kExitError;
  } catch (const std::exception& e) {
    emit_error("error", e.what());
    return kExitError;
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args);
}

}  // namespace uavplan
