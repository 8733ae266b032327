#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "uavplan/single_sensor.hpp"
#include "uavplan/types.hpp"

namespace uavplan {

/// Cost-to-go values over the search points, one row per stage. Row r holds
/// J_{r+1}: row 0 is the stage-1 table whose first entry is the plan total,
/// row N is the constant terminal row. actions[r][i] is the argmin interval
/// (as point indices) for stage r+1 in state i; {-1,-1} when no action is
/// feasible or the row is terminal.
struct CostToGoTable {
  std::vector<double> points_m;
  std::vector<std::vector<double>> values;
  std::vector<std::vector<std::pair<int, int>>> actions;
};

struct DpStats {
  std::size_t states_evaluated = 0;
  std::size_t states_copied = 0;
  std::size_t stage_cost_evals = 0;
};

struct DpResult {
  FlightPlan plan;
  CostToGoTable table;
  DpStats stats;
};

/// Per-stage cost of serving `sensor` (0-based) over the absolute interval
/// [x, y]: hover duration when x == y, otherwise the slowdown overhead
/// (y-x)(1/v* - 1/v_max); +infinity when the interval cannot deliver the
/// sensor's bits.
double stage_cost(const Scenario& scenario, std::size_t sensor, double x_m,
                  double y_m, const SolverOptions& opts = {});

/// Backward recursion over all states.
DpResult dp_solve(const Scenario& scenario, const Grid& grid,
                  const SolverOptions& opts = {});

/// Same tables and total, but states inside a plateau [s, x*] copy their
/// value from the state that opened it instead of being re-evaluated.
DpResult dp_solve_pruned(const Scenario& scenario, const Grid& grid,
                         const SolverOptions& opts = {});

/// Fly at v_max, hover above every sensor for its minimum hover time.
FlightPlan baseline_hover_only(const Scenario& scenario,
                               const SolverOptions& opts = {});

/// Gap-free partition of the route; each sensor transmits at constant power
/// over its slice while the UAV crosses it at the fastest feasible speed.
/// Slice boundaries are optimized by the same kind of backward recursion.
FlightPlan baseline_always_collecting(const Scenario& scenario,
                                      const Grid& grid,
                                      const SolverOptions& opts = {});

namespace detail {

// Constant-power throughput over an absolute interval at a given speed, and
// its v -> 0 limit; exposed for the monotonicity checks in tests.
double constant_power_throughput(const Scenario& scenario, std::size_t sensor,
                                 double x_m, double y_m, double speed_mps);
double constant_power_limit(const Scenario& scenario, std::size_t sensor,
                            double x_m, double y_m);

}  // namespace detail

}  // namespace uavplan
