#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "uavplan/montecarlo.hpp"
#include "uavplan/planner.hpp"
#include "uavplan/types.hpp"

namespace uavplan {

/// Malformed or invalid input document; the message cites the key path, or
/// the line/column for syntax errors.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScenarioDocument {
  Scenario scenario;
  SolverOptions solver;
};

struct MonteCarloDocument {
  EnsembleConfig config;
  SweepParam param = SweepParam::bits;
  std::vector<double> values;
  SolverOptions solver;
};

ScenarioDocument parse_scenario(const std::string& path);
ScenarioDocument parse_scenario_text(const std::string& text,
                                     const std::string& origin);
MonteCarloDocument parse_montecarlo_config(const std::string& path);
MonteCarloDocument parse_montecarlo_config_text(const std::string& text,
                                                const std::string& origin);

nlohmann::ordered_json scenario_to_json(const Scenario& scenario,
                                        const SolverOptions& solver);
std::string serialize_scenario(const Scenario& scenario,
                               const SolverOptions& solver);

/// Solver provenance carried in plan reports.
struct PlanReportMeta {
  std::string algorithm;  // dp | dp_pruned | hover_only | always_collecting
  int grid_points = 0;
  std::size_t search_points = 0;
  double speed_tol_mps = 0.0;
  double hover_tol_rel = 0.0;
  std::size_t states_evaluated = 0;
  std::size_t states_copied = 0;
  std::size_t stage_cost_evals = 0;
};

nlohmann::ordered_json plan_report(const Scenario& scenario,
                                   const SolverOptions& solver,
                                   const FlightPlan& plan,
                                   const PlanReportMeta& meta);

/// Re-derives every segment time from the scenario echoed in the report and
/// returns the largest relative deviation from the recorded times.
double plan_report_max_time_error(const nlohmann::ordered_json& report);

/// CSV row for the single-sensor parameter sweep.
struct SweepRow {
  double param = 0.0;
  double x_m = 0.0;
  double y_m = 0.0;
  double v_mps = 0.0;  // 0 for hover
  SegmentMode mode = SegmentMode::fly;
  double total_time_s = 0.0;
};

std::string format_csv_value(double v);  // 9 significant digits
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string curve_csv(const std::vector<CurvePoint>& points);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace uavplan
