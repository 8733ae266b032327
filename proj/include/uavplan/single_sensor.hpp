#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "uavplan/types.hpp"

namespace uavplan {

struct HoverSolution {
  double position_m = 0.0;
  double duration_s = 0.0;
  double power_w = 0.0;  // constant, energy / duration
};

struct SpeedSolution {
  double speed_mps = 0.0;
  double water_level = 0.0;
  double throughput_bits = 0.0;  // max deliverable bits at this speed
};

/// Water-filling transmit profile p(s) = max(0, level - inverse_gain(s)) over
/// a sensor-relative interval.
class PowerProfile {
 public:
  PowerProfile(Interval interval, double level, ChannelParams ch)
      : interval_(interval), level_(level), ch_(std::move(ch)) {}

  double operator()(double offset_m) const;
  /// n >= 2 uniform samples of (offset, power) for serialization.
  std::vector<std::pair<double, double>> sample(int n) const;

  const Interval& interval() const { return interval_; }
  double level() const { return level_; }

 private:
  Interval interval_;
  double level_;
  ChannelParams ch_;
};

/// Largest deliverable amount of bits for a sensor regardless of mode:
/// W*beta*E / (2*H^alpha*ln2). Feasible requirements are strictly below it.
double feasibility_threshold_bits(const SensorSpec& sensor,
                                  const ChannelParams& ch);
bool feasible(const SensorSpec& sensor, const ChannelParams& ch);

/// Minimum hover duration above `position_m` (absolute) that uploads the
/// sensor's bits with its full energy at constant power. Bisection on a
/// monotone transcendental; residual <= max(1, bits) * tol_rel.
/// Throws InfeasibleError when the requirement exceeds the point-wise limit.
double hover_time(const SensorSpec& sensor, double position_m,
                  const ChannelParams& ch, double tol_rel = 1e-9);
HoverSolution solve_hover(const SensorSpec& sensor, double position_m,
                          const ChannelParams& ch, double tol_rel = 1e-9);

// The interval solvers below take sensor-relative coordinates (x - S, y - S).

/// Smallest speed keeping the water-filling power positive across (x, y),
/// capped at v_max.
double min_speed(double x_m, double y_m, const SensorSpec& sensor,
                 const ChannelParams& ch, double v_max_mps);

/// Water level v*E/(y-x) + pathloss_integral(x,y) / ((y-x)*beta).
double water_level(double x_m, double y_m, double speed_mps,
                   const SensorSpec& sensor, const ChannelParams& ch);

/// Optimal transmit profile for crossing [x, y] at the given speed. Requires
/// speed >= min_speed so the profile is positive on the open interval; the
/// profile integrates to speed * energy over the interval.
PowerProfile power_profile(double x_m, double y_m, double speed_mps,
                           const SensorSpec& sensor, const ChannelParams& ch);

/// Maximum deliverable bits over [x, y] at the given speed (closed form of
/// the water-filling throughput). Requires speed >= min_speed.
double max_throughput(double x_m, double y_m, double speed_mps,
                      const SensorSpec& sensor, const ChannelParams& ch);

/// Largest speed in [min_speed, v_max] that still uploads the sensor's bits,
/// by bisection on the decreasing throughput; empty when even the minimum
/// speed cannot deliver them.
std::optional<SpeedSolution> solve_speed(double x_m, double y_m,
                                         const SensorSpec& sensor,
                                         const ChannelParams& ch,
                                         double v_max_mps,
                                         double speed_tol_mps = 1e-6);

/// Best single-sensor segment over the grid: every interval pair, every
/// hover candidate. Ties prefer flying, then the smaller left endpoint.
PlanSegment single_sensor_plan(const Scenario& scenario,
                               const SolverOptions& opts = {});

/// Route time implied by a single-sensor segment.
double single_sensor_total_time(const Scenario& scenario,
                                const PlanSegment& segment);

namespace detail {

// Piecewise closed form of the minimum speed for alpha = 2; kept as the
// second algebraic route for cross-checking the general expression.
double min_speed_alpha2(double x_m, double y_m, const SensorSpec& sensor,
                        const ChannelParams& ch, double v_max_mps);

// Shared by the grid planners: hover/fly cost of serving `sensor` over the
// absolute interval [x, y]; +infinity when infeasible.
double interval_cost(const Scenario& scenario, std::size_t sensor,
                     double x_m, double y_m, const SolverOptions& opts);

// Fully-described segment for an interval chosen by a planner.
PlanSegment make_segment(const Scenario& scenario, std::size_t sensor,
                         double x_m, double y_m, const SolverOptions& opts);

}  // namespace detail

}  // namespace uavplan
