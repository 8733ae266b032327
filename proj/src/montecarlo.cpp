#include "uavplan/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "uavplan/parallel.hpp"
#include "uavplan/planner.hpp"
#include "uavplan/single_sensor.hpp"

namespace uavplan {

namespace {

constexpr int kMaxRejections = 10000;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

void validate_config(const EnsembleConfig& cfg) {
  if (!(cfg.mean_bits > 0.0))
    throw std::invalid_argument("ensemble: mean_bits must be > 0");
  if (!(cfg.mean_energy_j > 0.0))
    throw std::invalid_argument("ensemble: mean_energy_J must be > 0");
  if (cfg.sensor_count < 0)
    throw std::invalid_argument("ensemble: sensor_count must be >= 0");
  if (cfg.trials < 1)
    throw std::invalid_argument("ensemble: trials must be >= 1");
  if (!(cfg.s_start_m < cfg.s_end_m))
    throw std::invalid_argument("ensemble: s_start_m must be < s_end_m");
  if (!(cfg.v_max_mps > 0.0))
    throw std::invalid_argument("ensemble: v_max_mps must be > 0");
  cfg.channel.validate();
}

enum Stream : std::uint64_t { kPositions = 0, kBits = 1, kEnergy = 2 };

}  // namespace

namespace detail {

double unit_draw(std::uint64_t seed, std::uint64_t stream,
                 std::uint64_t index) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ (stream + 0xD1B54A32D192ED03ull));
  h = splitmix64(h ^ index);
  return static_cast<double>((h >> 11) + 1) * 0x1.0p-53;  // (0, 1]
}

}  // namespace detail

Scenario sample_scenario(const EnsembleConfig& cfg) {
  validate_config(cfg);
  const int n = cfg.sensor_count;
  const double span = cfg.s_end_m - cfg.s_start_m;

  std::vector<double> positions(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    positions[i] = cfg.s_start_m +
                   span * detail::unit_draw(cfg.seed, kPositions, i);
  std::sort(positions.begin(), positions.end());
  // Exactly coincident draws are astronomically unlikely; resolve them with
  // follow-up draws so positions stay strictly increasing.
  for (int attempt = 1; attempt <= 64; ++attempt) {
    bool ok = true;
    for (int i = 1; i < n; ++i) {
      if (positions[i] == positions[i - 1]) {
        positions[i] = cfg.s_start_m +
                       span * detail::unit_draw(
                                  cfg.seed, kPositions,
                                  static_cast<std::uint64_t>(n) * attempt + i);
        ok = false;
      }
    }
    if (ok) break;
    std::sort(positions.begin(), positions.end());
  }

  Scenario sc;
  sc.s_start_m = cfg.s_start_m;
  sc.s_end_m = cfg.s_end_m;
  sc.v_max_mps = cfg.v_max_mps;
  sc.channel = cfg.channel;
  sc.sensors.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    SensorSpec s;
    s.position_m = positions[i];
    bool accepted = false;
    for (int a = 0; a < kMaxRejections; ++a) {
      const std::uint64_t idx =
          static_cast<std::uint64_t>(i) * kMaxRejections + a;
      s.bits = 2.0 * cfg.mean_bits * detail::unit_draw(cfg.seed, kBits, idx);
      s.energy_j =
          2.0 * cfg.mean_energy_j * detail::unit_draw(cfg.seed, kEnergy, idx);
      if (feasible(s, cfg.channel)) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      std::ostringstream os;
      os << "ensemble: sensor " << (i + 1) << " found no feasible "
         << "(bits, energy) pair in " << kMaxRejections
         << " draws; the configured means are too extreme";
      throw InfeasibleError(os.str());
    }
    sc.sensors.push_back(s);
  }
  sc.validate();
  return sc;
}

namespace {

TrialOutcome run_trial(const EnsembleConfig& cfg, SolverKind solver,
                       const SolverOptions& opts, double* bits_sum,
                       double* energy_sum, int* sensors_sampled) {
  TrialOutcome out;
  try {
    const Scenario sc = sample_scenario(cfg);
    for (const SensorSpec& s : sc.sensors) {
      *bits_sum += s.bits;
      *energy_sum += s.energy_j;
    }
    *sensors_sampled += static_cast<int>(sc.sensors.size());
    SolverOptions inner = opts;
    inner.threads = 1;  // trials are the parallel unit
    switch (solver) {
      case SolverKind::dp: {
        const Grid g = Grid::make(sc.s_start_m, sc.s_end_m, inner.grid_points);
        out.total_time_s = dp_solve_pruned(sc, g, inner).plan.total_time_s;
        break;
      }
      case SolverKind::hover_only:
        out.total_time_s = baseline_hover_only(sc, inner).total_time_s;
        break;
      case SolverKind::always_collecting: {
        const Grid g = Grid::make(sc.s_start_m, sc.s_end_m, inner.grid_points);
        out.total_time_s =
            baseline_always_collecting(sc, g, inner).total_time_s;
        break;
      }
    }
    out.ok = true;
  } catch (const InfeasibleError& e) {
    out.error = e.what();
  }
  return out;
}

}  // namespace

SweepResult sweep_average_time(const EnsembleConfig& config, SweepParam param,
                               const std::vector<double>& values,
                               SolverKind solver, const SolverOptions& opts) {
  validate_config(config);
  SweepResult result;
  result.points.reserve(values.size());
  result.trials.reserve(values.size());

  for (double value : values) {
    EnsembleConfig point_cfg = config;
    (param == SweepParam::bits ? point_cfg.mean_bits
                               : point_cfg.mean_energy_j) = value;

    const int trials = config.trials;
    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
    std::vector<double> bits_sums(static_cast<std::size_t>(trials), 0.0);
    std::vector<double> energy_sums(static_cast<std::size_t>(trials), 0.0);
    std::vector<int> sampled(static_cast<std::size_t>(trials), 0);

    detail::parallel_for(
        static_cast<std::size_t>(trials), opts.threads,
        [&](std::size_t lo, std::size_t hi) {
          for (std::size_t t = lo; t < hi; ++t) {
            EnsembleConfig trial_cfg = point_cfg;
            trial_cfg.seed = config.seed ^ static_cast<std::uint64_t>(t);
            outcomes[t] = run_trial(trial_cfg, solver, opts, &bits_sums[t],
                                    &energy_sums[t], &sampled[t]);
          }
        });

    CurvePoint pt;
    pt.param_value = value;
    pt.trials_total = trials;
    double sum = 0.0;
    for (const TrialOutcome& o : outcomes)
      if (o.ok) {
        ++pt.trials_succeeded;
        sum += o.total_time_s;
      }
    if (pt.trials_succeeded > 0) pt.mean_time_s = sum / pt.trials_succeeded;
    if (pt.trials_succeeded > 1) {
      double ss = 0.0;
      for (const TrialOutcome& o : outcomes)
        if (o.ok) {
          const double d = o.total_time_s - pt.mean_time_s;
          ss += d * d;
        }
      pt.stddev_time_s = std::sqrt(ss / (pt.trials_succeeded - 1));
    }
    double bits_total = 0.0, energy_total = 0.0;
    int sensors_total = 0;
    for (int t = 0; t < trials; ++t) {
      bits_total += bits_sums[t];
      energy_total += energy_sums[t];
      sensors_total += sampled[t];
    }
    if (sensors_total > 0) {
      pt.eff_mean_bits = bits_total / sensors_total;
      pt.eff_mean_energy_j = energy_total / sensors_total;
    }
    result.points.push_back(pt);
    result.trials.push_back(std::move(outcomes));
  }
  return result;
}

}  // namespace uavplan
