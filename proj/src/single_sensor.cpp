#include "uavplan/single_sensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "uavplan/parallel.hpp"

namespace uavplan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_interval(double x, double y, const char* who) {
  if (!(x < y)) {
    std::ostringstream os;
    os << who << ": requires x < y (got x=" << x << ", y=" << y << ")";
    throw std::invalid_argument(os.str());
  }
}

// Condition for a positive water-filling profile, as an uncapped speed:
// ((y-x)*(max(x^2,y^2)+H^2)^(alpha/2) - pathloss_integral) / (beta*E).
double min_speed_uncapped(double x, double y, const SensorSpec& sensor,
                          const ChannelParams& ch) {
  const double h2 = ch.altitude_m * ch.altitude_m;
  const double peak = std::max(x * x, y * y) + h2;
  const double raw = (y - x) * std::pow(peak, 0.5 * ch.alpha) -
                     pathloss_integral(x, y, ch);
  return std::max(0.0, raw) / (ch.beta * sensor.energy_j);
}

}  // namespace

double PowerProfile::operator()(double offset_m) const {
  return std::max(0.0, level_ - inverse_gain(offset_m, ch_));
}

std::vector<std::pair<double, double>> PowerProfile::sample(int n) const {
  if (n < 2) throw std::invalid_argument("PowerProfile::sample: n must be >= 2");
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(n));
  const double step = interval_.width() / (n - 1);
  for (int i = 0; i < n; ++i) {
    const double s = (i == n - 1) ? interval_.y_m : interval_.x_m + i * step;
    out.emplace_back(s, (*this)(s));
  }
  return out;
}

double feasibility_threshold_bits(const SensorSpec& sensor,
                                  const ChannelParams& ch) {
  return 0.5 * ch.bandwidth_hz * sensor.energy_j /
         (inverse_gain(0.0, ch) * M_LN2);
}

bool feasible(const SensorSpec& sensor, const ChannelParams& ch) {
  return sensor.bits < feasibility_threshold_bits(sensor, ch);
}

double hover_time(const SensorSpec& sensor, double position_m,
                  const ChannelParams& ch, double tol_rel) {
  const double offset = position_m - sensor.position_m;
  const double ig = inverse_gain(offset, ch);
  const double supremum =
      0.5 * ch.bandwidth_hz * sensor.energy_j / (ig * M_LN2);
  if (!(sensor.bits < supremum)) {
    std::ostringstream os;
    os << "hover at " << position_m << " m cannot upload " << sensor.bits
       << " bits: limit is " << supremum
       << " bits (W*beta*E / (2*H_eff^alpha*ln2))";
    throw InfeasibleError(os.str());
  }

  const double target = sensor.bits;
  const auto uploaded = [&](double t) {
    return 0.5 * ch.bandwidth_hz * t * log2p1(sensor.energy_j / (t * ig));
  };

  double hi = 1.0;
  int guard = 0;
  while (uploaded(hi) < target) {
    hi *= 2.0;
    if (++guard > 1100)
      throw InfeasibleError("hover_time: bracketing failed to terminate");
  }
  double lo = (hi == 1.0) ? 0.0 : 0.5 * hi;

  const double tol_abs = std::max(1.0, target) * tol_rel;
  double t = hi;
  for (int it = 0; it < 300; ++it) {
    t = 0.5 * (lo + hi);
    const double r = uploaded(t) - target;
    if (std::fabs(r) <= tol_abs) break;
    if (r < 0.0)
      lo = t;
    else
      hi = t;
  }
  return t;
}

HoverSolution solve_hover(const SensorSpec& sensor, double position_m,
                          const ChannelParams& ch, double tol_rel) {
  HoverSolution sol;
  sol.position_m = position_m;
  sol.duration_s = hover_time(sensor, position_m, ch, tol_rel);
  sol.power_w = sensor.energy_j / sol.duration_s;
  return sol;
}

double min_speed(double x_m, double y_m, const SensorSpec& sensor,
                 const ChannelParams& ch, double v_max_mps) {
  require_interval(x_m, y_m, "min_speed");
  return std::min(v_max_mps, min_speed_uncapped(x_m, y_m, sensor, ch));
}

double water_level(double x_m, double y_m, double speed_mps,
                   const SensorSpec& sensor, const ChannelParams& ch) {
  require_interval(x_m, y_m, "water_level");
  if (!(speed_mps > 0.0))
    throw std::invalid_argument("water_level: speed must be > 0");
  const double width = y_m - x_m;
  return speed_mps * sensor.energy_j / width +
         pathloss_integral(x_m, y_m, ch) / (width * ch.beta);
}

namespace {

void require_positive_profile(double x, double y, double v,
                              const SensorSpec& sensor,
                              const ChannelParams& ch, const char* who) {
  require_interval(x, y, who);
  const double vm = min_speed_uncapped(x, y, sensor, ch);
  if (v < vm) {
    std::ostringstream os;
    os << who << ": speed " << v << " m/s is below the minimum " << vm
       << " m/s for a positive transmit profile; shrink the interval or "
          "raise the speed";
    throw std::invalid_argument(os.str());
  }
}

double max_throughput_at_level(double x, double y, double v, double level,
                               const ChannelParams& ch) {
  const double h = ch.altitude_m;
  const auto antiderivative = [&](double s) {
    return s * std::log2(level / inverse_gain(s, ch)) +
           ch.alpha * s / M_LN2 - (ch.alpha * h / M_LN2) * std::atan(s / h);
  };
  return 0.5 * ch.bandwidth_hz / v * (antiderivative(y) - antiderivative(x));
}

}  // namespace

PowerProfile power_profile(double x_m, double y_m, double speed_mps,
                           const SensorSpec& sensor, const ChannelParams& ch) {
  require_positive_profile(x_m, y_m, speed_mps, sensor, ch, "power_profile");
  return PowerProfile({x_m, y_m},
                      water_level(x_m, y_m, speed_mps, sensor, ch), ch);
}

double max_throughput(double x_m, double y_m, double speed_mps,
                      const SensorSpec& sensor, const ChannelParams& ch) {
  require_positive_profile(x_m, y_m, speed_mps, sensor, ch, "max_throughput");
  const double level = water_level(x_m, y_m, speed_mps, sensor, ch);
  return max_throughput_at_level(x_m, y_m, speed_mps, level, ch);
}

std::optional<SpeedSolution> solve_speed(double x_m, double y_m,
                                         const SensorSpec& sensor,
                                         const ChannelParams& ch,
                                         double v_max_mps,
                                         double speed_tol_mps) {
  require_interval(x_m, y_m, "solve_speed");
  const double vm = min_speed_uncapped(x_m, y_m, sensor, ch);
  if (vm > v_max_mps) return std::nullopt;  // no speed gives a positive profile

  const auto at = [&](double v) {
    SpeedSolution s;
    s.speed_mps = v;
    s.water_level = water_level(x_m, y_m, v, sensor, ch);
    s.throughput_bits = max_throughput_at_level(x_m, y_m, v, s.water_level, ch);
    return s;
  };

  const double v_lo = std::max(vm, std::numeric_limits<double>::min());
  SpeedSolution slow = at(v_lo);
  if (slow.throughput_bits < sensor.bits) return std::nullopt;

  SpeedSolution fast = at(v_max_mps);
  if (fast.throughput_bits >= sensor.bits) return fast;  // v_max exactly

  // Throughput decreases in speed: keep the fastest speed still meeting it.
  double lo = v_lo;
  double hi = v_max_mps;
  while (hi - lo > speed_tol_mps) {
    const double mid = 0.5 * (lo + hi);
    if (at(mid).throughput_bits >= sensor.bits)
      lo = mid;
    else
      hi = mid;
  }
  return at(lo);
}

namespace detail {

double min_speed_alpha2(double x, double y, const SensorSpec& sensor,
                        const ChannelParams& ch, double v_max_mps) {
  require_interval(x, y, "min_speed_alpha2");
  const double denom = 3.0 * ch.beta * sensor.energy_j;
  double cubic;
  if (std::fabs(x) <= std::fabs(y))
    cubic = 2.0 * y * y * y + x * x * x - 3.0 * y * y * x;
  else
    cubic = 3.0 * x * x * y - 2.0 * x * x * x - y * y * y;
  return std::min(v_max_mps, cubic / denom);
}

double interval_cost(const Scenario& scenario, std::size_t sensor,
                     double x_m, double y_m, const SolverOptions& opts) {
  const SensorSpec& sn = scenario.sensors[sensor];
  if (x_m == y_m) {
    try {
      return hover_time(sn, x_m, scenario.channel, opts.hover_tol_rel);
    } catch (const InfeasibleError&) {
      return kInf;
    }
  }
  const auto sol =
      solve_speed(x_m - sn.position_m, y_m - sn.position_m, sn,
                  scenario.channel, scenario.v_max_mps, opts.speed_tol_mps);
  if (!sol) return kInf;
  return (y_m - x_m) * (1.0 / sol->speed_mps - 1.0 / scenario.v_max_mps);
}

PlanSegment make_segment(const Scenario& scenario, std::size_t sensor,
                         double x_m, double y_m, const SolverOptions& opts) {
  const SensorSpec& sn = scenario.sensors[sensor];
  PlanSegment seg;
  seg.sensor_index = static_cast<int>(sensor) + 1;
  seg.interval = {x_m, y_m};
  if (x_m == y_m) {
    seg.mode = SegmentMode::hover;
    const HoverSolution h =
        solve_hover(sn, x_m, scenario.channel, opts.hover_tol_rel);
    seg.time_s = h.duration_s;
    seg.power_w = h.power_w;
  } else {
    seg.mode = SegmentMode::fly;
    const auto sol =
        solve_speed(x_m - sn.position_m, y_m - sn.position_m, sn,
                    scenario.channel, scenario.v_max_mps, opts.speed_tol_mps);
    if (!sol)
      throw std::logic_error("make_segment: interval became infeasible");
    seg.speed_mps = sol->speed_mps;
    seg.time_s = (y_m - x_m) / sol->speed_mps;
    seg.water_level = sol->water_level;
  }
  return seg;
}

}  // namespace detail

namespace {

// Candidate ordering for the grid search: cheapest first, flying before
// hovering on ties, then the smaller left endpoint, then the smaller right.
struct Candidate {
  double extra = kInf;
  bool hover = false;
  int ix = -1;
  int iy = -1;

  bool better_than(const Candidate& o) const {
    if (extra != o.extra) return extra < o.extra;
    if (hover != o.hover) return !hover;
    if (ix != o.ix) return ix < o.ix;
    return iy < o.iy;
  }
};

}  // namespace

PlanSegment single_sensor_plan(const Scenario& scenario,
                               const SolverOptions& opts) {
  scenario.validate();
  if (scenario.sensors.size() != 1)
    throw std::invalid_argument(
        "single_sensor_plan: scenario must contain exactly one sensor");
  const Grid grid =
      Grid::make(scenario.s_start_m, scenario.s_end_m, opts.grid_points);
  const std::vector<double> pts = plan_search_points(scenario, grid);
  const int p = static_cast<int>(pts.size());

  // One triangular scan covers both modes: the diagonal is the hover case.
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(p) * (p + 1) / 2);
  for (int ix = 0; ix < p; ++ix)
    for (int iy = ix; iy < p; ++iy) pairs.emplace_back(ix, iy);

  std::vector<double> extra(pairs.size());
  detail::parallel_for(pairs.size(), opts.threads,
                       [&](std::size_t lo, std::size_t hi) {
                         for (std::size_t k = lo; k < hi; ++k) {
                           const auto [ix, iy] = pairs[k];
                           extra[k] = detail::interval_cost(
                               scenario, 0, pts[ix], pts[iy], opts);
                         }
                       });

  Candidate best;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (!(extra[k] < kInf)) continue;
    Candidate cand;
    cand.extra = extra[k];
    cand.hover = (pairs[k].first == pairs[k].second);
    cand.ix = pairs[k].first;
    cand.iy = pairs[k].second;
    if (cand.better_than(best)) best = cand;
  }
  if (best.ix < 0)
    throw InfeasibleError(
        "single_sensor_plan: no feasible interval or hover point on the grid");
  return detail::make_segment(scenario, 0, pts[best.ix], pts[best.iy], opts);
}

double single_sensor_total_time(const Scenario& scenario,
                                const PlanSegment& segment) {
  return scenario.route_length_m() / scenario.v_max_mps +
         segment_extra_s(segment, scenario.v_max_mps);
}

}  // namespace uavplan
