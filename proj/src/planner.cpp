#include "uavplan/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "uavplan/parallel.hpp"
#include "uavplan/quadrature.hpp"

namespace uavplan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_grid_matches(const Scenario& scenario, const Grid& grid) {
  if (grid.size() < 2 || grid.points_m.front() != scenario.s_start_m ||
      grid.points_m.back() != scenario.s_end_m)
    throw std::invalid_argument("grid must span [s_start_m, s_end_m] exactly");
}

// Upper-triangular pair costs for one stage, indexed by (ix, iy) with
// ix <= iy over the search points.
class StageCosts {
 public:
  StageCosts(const Scenario& scenario, const std::vector<double>& pts,
             std::size_t sensor, const SolverOptions& opts)
      : pts_(pts), p_(static_cast<int>(pts.size())) {
    row_off_.resize(p_);
    std::size_t off = 0;
    for (int ix = 0; ix < p_; ++ix) {
      row_off_[ix] = off;
      off += static_cast<std::size_t>(p_ - ix);
    }
    cost_.resize(off);

    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(cost_.size());
    for (int ix = 0; ix < p_; ++ix)
      for (int iy = ix; iy < p_; ++iy) pairs.emplace_back(ix, iy);
    detail::parallel_for(pairs.size(), opts.threads,
                         [&](std::size_t lo, std::size_t hi) {
                           for (std::size_t k = lo; k < hi; ++k) {
                             const auto [ix, iy] = pairs[k];
                             cost_[index(ix, iy)] = detail::interval_cost(
                                 scenario, sensor, pts_[ix], pts_[iy], opts);
                           }
                         });
  }

  double at(int ix, int iy) const { return cost_[index(ix, iy)]; }
  std::size_t evaluations() const { return cost_.size(); }
  bool any_finite() const {
    for (double c : cost_)
      if (c < kInf) return true;
    return false;
  }

 private:
  std::size_t index(int ix, int iy) const {
    return row_off_[ix] + static_cast<std::size_t>(iy - ix);
  }

  const std::vector<double>& pts_;
  int p_;
  std::vector<std::size_t> row_off_;
  std::vector<double> cost_;
};

struct StateResult {
  double value = kInf;
  int ix = -1;
  int iy = -1;
};

// Minimum over actions (ix, iy) with state <= ix <= iy. Scanned with iy
// ascending and ix ascending inside, so ties resolve to the smallest right
// endpoint (leaving the most room for later sensors), then the smallest left.
StateResult evaluate_state(const StageCosts& costs,
                           const std::vector<double>& next_values, int state,
                           int p) {
  StateResult best;
  for (int iy = state; iy < p; ++iy) {
    const double base = next_values[iy];
    if (!(base < kInf)) continue;
    for (int ix = state; ix <= iy; ++ix) {
      const double c = costs.at(ix, iy) + base;
      if (c < best.value) {
        best.value = c;
        best.ix = ix;
        best.iy = iy;
      }
    }
  }
  return best;
}

DpResult dp_run(const Scenario& scenario, const Grid& grid, bool prune,
                const SolverOptions& opts) {
  scenario.validate();
  require_grid_matches(scenario, grid);

  DpResult out;
  CostToGoTable& table = out.table;
  table.points_m = plan_search_points(scenario, grid);
  const int p = static_cast<int>(table.points_m.size());
  const std::size_t n_sensors = scenario.sensors.size();

  table.values.assign(n_sensors + 1, {});
  table.actions.assign(n_sensors, std::vector<std::pair<int, int>>(
                                      p, {-1, -1}));
  table.values[n_sensors].assign(
      p, scenario.route_length_m() / scenario.v_max_mps);

  std::vector<int> blocked_stage;
  for (std::size_t stage = n_sensors; stage-- > 0;) {
    const StageCosts costs(scenario, table.points_m, stage, opts);
    out.stats.stage_cost_evals += costs.evaluations();
    if (!costs.any_finite()) blocked_stage.push_back(static_cast<int>(stage));

    const std::vector<double>& next = table.values[stage + 1];
    std::vector<double>& values = table.values[stage];
    values.assign(p, kInf);
    auto& actions = table.actions[stage];

    if (!prune) {
      for (int i = 0; i < p; ++i) {
        const StateResult r = evaluate_state(costs, next, i, p);
        ++out.stats.states_evaluated;
        values[i] = r.value;
        actions[i] = {r.ix, r.iy};
      }
    } else {
      int i = 0;
      while (i < p) {
        const StateResult r = evaluate_state(costs, next, i, p);
        ++out.stats.states_evaluated;
        values[i] = r.value;
        actions[i] = {r.ix, r.iy};
        int k = i + 1;
        // The argmin stays optimal for every state up to its left endpoint,
        // so those states take the same value without re-evaluation.
        for (; r.ix > i && k <= r.ix; ++k) {
          values[k] = r.value;
          actions[k] = actions[i];
          ++out.stats.states_copied;
        }
        i = k;
      }
    }
  }

  // Forward pass: replay the argmin actions from the start state.
  int state = 0;
  for (std::size_t stage = 0; stage < n_sensors; ++stage) {
    const auto [ix, iy] = table.actions[stage][state];
    if (ix < 0) {
      std::ostringstream os;
      os << "no feasible plan: ";
      if (!blocked_stage.empty())
        os << "sensor " << (blocked_stage.back() + 1)
           << " cannot be served from any state";
      else
        os << "sensor " << (stage + 1)
           << " cannot be served from position "
           << table.points_m[static_cast<std::size_t>(state)] << " m";
      throw InfeasibleError(os.str());
    }
    out.plan.segments.push_back(detail::make_segment(
        scenario, stage, table.points_m[ix], table.points_m[iy], opts));
    state = iy;
  }
  out.plan.total_time_s =
      n_sensors == 0 ? scenario.route_length_m() / scenario.v_max_mps
                     : table.values[0][0];
  return out;
}

}  // namespace

double stage_cost(const Scenario& scenario, std::size_t sensor, double x_m,
                  double y_m, const SolverOptions& opts) {
  if (sensor >= scenario.sensors.size())
    throw std::invalid_argument("stage_cost: sensor index out of range");
  if (!(scenario.s_start_m <= x_m && x_m <= y_m && y_m <= scenario.s_end_m))
    throw std::invalid_argument(
        "stage_cost: requires s_start <= x <= y <= s_end");
  return detail::interval_cost(scenario, sensor, x_m, y_m, opts);
}

DpResult dp_solve(const Scenario& scenario, const Grid& grid,
                  const SolverOptions& opts) {
  return dp_run(scenario, grid, /*prune=*/false, opts);
}

DpResult dp_solve_pruned(const Scenario& scenario, const Grid& grid,
                         const SolverOptions& opts) {
  return dp_run(scenario, grid, /*prune=*/true, opts);
}

FlightPlan baseline_hover_only(const Scenario& scenario,
                               const SolverOptions& opts) {
  scenario.validate();
  std::vector<PlanSegment> segments;
  segments.reserve(scenario.sensors.size());
  for (std::size_t i = 0; i < scenario.sensors.size(); ++i) {
    const SensorSpec& s = scenario.sensors[i];
    PlanSegment seg;
    seg.sensor_index = static_cast<int>(i) + 1;
    seg.mode = SegmentMode::hover;
    seg.interval = {s.position_m, s.position_m};
    const HoverSolution h =
        solve_hover(s, s.position_m, scenario.channel, opts.hover_tol_rel);
    seg.time_s = h.duration_s;
    seg.power_w = h.power_w;
    segments.push_back(seg);
  }
  return make_flight_plan(scenario, std::move(segments));
}

namespace detail {

double constant_power_throughput(const Scenario& scenario, std::size_t sensor,
                                 double x_m, double y_m, double speed_mps) {
  const SensorSpec& sn = scenario.sensors[sensor];
  const ChannelParams& ch = scenario.channel;
  const double width = y_m - x_m;
  const double power = speed_mps * sn.energy_j / width;
  const double xr = x_m - sn.position_m;
  const double yr = y_m - sn.position_m;
  if (ch.alpha == 2.0) {
    // 1 + p*beta/(s^2+H^2) = (s^2 + H^2 + c)/(s^2 + H^2) integrates in
    // closed form via u*ln(u^2+A^2) - 2u + 2A*atan(u/A).
    const double h = ch.altitude_m;
    const double c = power * ch.beta;
    const double k = std::sqrt(h * h + c);
    const auto g = [](double u, double a) {
      return u * std::log(u * u + a * a) - 2.0 * u + 2.0 * a * std::atan(u / a);
    };
    const double integral = (g(yr, k) - g(xr, k)) - (g(yr, h) - g(xr, h));
    return 0.5 * ch.bandwidth_hz / (speed_mps * M_LN2) * integral;
  }
  const double integral = integrate(
      [&](double s) { return log2p1(power / inverse_gain(s, ch)); }, xr, yr,
      1e-10);
  return 0.5 * ch.bandwidth_hz / speed_mps * integral;
}

double constant_power_limit(const Scenario& scenario, std::size_t sensor,
                            double x_m, double y_m) {
  const SensorSpec& sn = scenario.sensors[sensor];
  const ChannelParams& ch = scenario.channel;
  const double xr = x_m - sn.position_m;
  const double yr = y_m - sn.position_m;
  double inv_pathloss;  // integral of (s^2+H^2)^(-alpha/2)
  if (ch.alpha == 2.0) {
    const double h = ch.altitude_m;
    inv_pathloss = (std::atan(yr / h) - std::atan(xr / h)) / h;
  } else {
    const double h2 = ch.altitude_m * ch.altitude_m;
    const double e = -0.5 * ch.alpha;
    inv_pathloss =
        integrate([&](double s) { return std::pow(s * s + h2, e); }, xr, yr,
                  1e-10);
  }
  return 0.5 * ch.bandwidth_hz * sn.energy_j * ch.beta * inv_pathloss /
         ((y_m - x_m) * M_LN2);
}

}  // namespace detail

namespace {

// Fastest speed in (0, v_max] that still uploads the sensor's bits at
// constant power over [x, y]; +infinity time when none exists.
std::optional<double> constant_power_speed(const Scenario& scenario,
                                           std::size_t sensor, double x_m,
                                           double y_m,
                                           const SolverOptions& opts) {
  const SensorSpec& sn = scenario.sensors[sensor];
  if (x_m == y_m) return std::nullopt;
  const auto uploaded = [&](double v) {
    return detail::constant_power_throughput(scenario, sensor, x_m, y_m, v);
  };
  if (uploaded(scenario.v_max_mps) >= sn.bits) return scenario.v_max_mps;
  // Throughput rises toward a finite limit as the speed drops; anything at
  // or above that limit is out of reach for every positive speed.
  if (sn.bits >= detail::constant_power_limit(scenario, sensor, x_m, y_m))
    return std::nullopt;
  double lo = scenario.v_max_mps;
  int guard = 0;
  do {
    lo *= 0.5;
    if (++guard > 600) return std::nullopt;
  } while (uploaded(lo) < sn.bits);
  double hi = 2.0 * lo;
  while (hi - lo > opts.speed_tol_mps) {
    const double mid = 0.5 * (lo + hi);
    if (uploaded(mid) >= sn.bits)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace

FlightPlan baseline_always_collecting(const Scenario& scenario,
                                      const Grid& grid,
                                      const SolverOptions& opts) {
  scenario.validate();
  require_grid_matches(scenario, grid);
  const std::vector<double> pts = plan_search_points(scenario, grid);
  const int p = static_cast<int>(pts.size());
  const std::size_t n_sensors = scenario.sensors.size();
  if (n_sensors == 0) return make_flight_plan(scenario, {});

  // Backward recursion over slice boundaries: state = left boundary of the
  // current sensor's slice; the last slice must end at the route end.
  std::vector<std::vector<double>> values(n_sensors + 1,
                                          std::vector<double>(p, kInf));
  std::vector<std::vector<int>> next_boundary(
      n_sensors, std::vector<int>(p, -1));
  values[n_sensors].assign(p, kInf);
  values[n_sensors][p - 1] = 0.0;

  for (std::size_t stage = n_sensors; stage-- > 0;) {
    // Slice times for every boundary pair of this stage.
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < p; ++a)
      for (int b = a; b < p; ++b) pairs.emplace_back(a, b);
    std::vector<double> slice_time(pairs.size(), kInf);
    detail::parallel_for(pairs.size(), opts.threads,
                         [&](std::size_t lo, std::size_t hi) {
                           for (std::size_t k = lo; k < hi; ++k) {
                             const auto [a, b] = pairs[k];
                             if (values[stage + 1][b] == kInf)
                               continue;  // unreachable continuation
                             const auto v = constant_power_speed(
                                 scenario, stage, pts[a], pts[b], opts);
                             if (v) slice_time[k] = (pts[b] - pts[a]) / *v;
                           }
                         });
    std::size_t k = 0;
    for (int a = 0; a < p; ++a)
      for (int b = a; b < p; ++b, ++k) {
        if (slice_time[k] == kInf) continue;
        const double c = slice_time[k] + values[stage + 1][b];
        if (c < values[stage][a]) {
          values[stage][a] = c;
          next_boundary[stage][a] = b;
        }
      }
  }

  if (values[0][0] == kInf)
    throw InfeasibleError(
        "always-collecting: no boundary choice can serve every sensor");

  std::vector<PlanSegment> segments;
  int state = 0;
  for (std::size_t stage = 0; stage < n_sensors; ++stage) {
    const int b = next_boundary[stage][state];
    const double x = pts[state];
    const double y = pts[b];
    const auto v = constant_power_speed(scenario, stage, x, y, opts);
    PlanSegment seg;
    seg.sensor_index = static_cast<int>(stage) + 1;
    seg.mode = SegmentMode::fly;
    seg.interval = {x, y};
    seg.speed_mps = *v;
    seg.time_s = (y - x) / *v;
    seg.power_w = *v * scenario.sensors[stage].energy_j / (y - x);
    segments.push_back(seg);
    state = b;
  }
  return make_flight_plan(scenario, std::move(segments));
}

}  // namespace uavplan
