#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uavplan/types.hpp"

namespace uavplan {

/// Random-ensemble description. Sensor positions are uniform over the route;
/// bits and energy are uniform on (0, 2*mean], rejection-resampled until the
/// pair is feasible. Every draw is a pure function of (seed, stream, index),
/// so scenarios are reproducible regardless of worker count.
struct EnsembleConfig {
  double mean_bits = 0.0;
  double mean_energy_j = 0.0;
  int sensor_count = 0;
  double s_start_m = 0.0;
  double s_end_m = 0.0;
  int trials = 1;
  std::uint64_t seed = 0;
  ChannelParams channel;
  double v_max_mps = 0.0;
};

enum class SweepParam { bits, energy };
enum class SolverKind { dp, hover_only, always_collecting };

struct CurvePoint {
  double param_value = 0.0;
  double mean_time_s = 0.0;
  double stddev_time_s = 0.0;  // sample standard deviation over successes
  int trials_succeeded = 0;
  int trials_total = 0;
  // Empirical means of the accepted draws; rejection shifts them away from
  // the nominal means, so they are reported alongside.
  double eff_mean_bits = 0.0;
  double eff_mean_energy_j = 0.0;
};

struct TrialOutcome {
  bool ok = false;
  double total_time_s = 0.0;
  std::string error;
};

struct SweepResult {
  std::vector<CurvePoint> points;
  std::vector<std::vector<TrialOutcome>> trials;  // per point, by trial index
};

/// Deterministic scenario draw for the config's seed. Trials derive their
/// seed as config.seed ^ trial_index before calling this.
Scenario sample_scenario(const EnsembleConfig& config);

/// Runs `trials` scenarios per sweep value through the chosen solver and
/// aggregates. Identical (config, sweep) inputs give identical results
/// independent of thread count; solvers see the same scenario draws.
SweepResult sweep_average_time(const EnsembleConfig& config, SweepParam param,
                               const std::vector<double>& values,
                               SolverKind solver,
                               const SolverOptions& opts = {});

namespace detail {
// Counter-based uniform draw on (0, 1].
double unit_draw(std::uint64_t seed, std::uint64_t stream,
                 std::uint64_t index);
}  // namespace detail

}  // namespace uavplan
