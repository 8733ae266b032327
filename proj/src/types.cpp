#include "uavplan/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "uavplan/single_sensor.hpp"

namespace uavplan {

void Scenario::validate() const {
  if (!(s_start_m < s_end_m))
    throw std::invalid_argument("scenario: s_start_m must be < s_end_m");
  if (!(v_max_mps > 0.0))
    throw std::invalid_argument("scenario: v_max_mps must be > 0");
  channel.validate();

  for (std::size_t i = 0; i < sensors.size(); ++i) {
    const SensorSpec& s = sensors[i];
    std::ostringstream at;
    at << "sensor " << (i + 1) << ": ";
    if (!(s.bits > 0.0))
      throw std::invalid_argument(at.str() + "bits must be > 0");
    if (!(s.energy_j > 0.0))
      throw std::invalid_argument(at.str() + "energy_J must be > 0");
    if (!(s.position_m >= s_start_m && s.position_m <= s_end_m))
      throw std::invalid_argument(at.str() +
                                  "position_m must lie in [s_start_m, s_end_m]");
    if (i > 0 && !(s.position_m > sensors[i - 1].position_m))
      throw std::invalid_argument(at.str() +
                                  "positions must be strictly increasing");
  }

  std::ostringstream bad;
  int offenders = 0;
  for (std::size_t i = 0; i < sensors.size(); ++i) {
    const double threshold = feasibility_threshold_bits(sensors[i], channel);
    if (!(sensors[i].bits < threshold)) {
      if (offenders++) bad << "; ";
      bad << "sensor " << (i + 1) << ": bits=" << sensors[i].bits
          << " is at or above the feasibility threshold " << threshold
          << " bits (W*beta*E / (2*H^alpha*ln2))";
    }
  }
  if (offenders) throw InfeasibleError(bad.str());
}

FlightPlan make_flight_plan(const Scenario& scenario,
                            std::vector<PlanSegment> segments) {
  FlightPlan plan;
  plan.total_time_s = scenario.route_length_m() / scenario.v_max_mps;
  for (const PlanSegment& seg : segments)
    plan.total_time_s += segment_extra_s(seg, scenario.v_max_mps);
  plan.segments = std::move(segments);
  return plan;
}

Grid Grid::make(double s_start_m, double s_end_m, int m) {
  if (m < 2) throw std::invalid_argument("grid: needs at least 2 points");
  if (!(s_start_m < s_end_m))
    throw std::invalid_argument("grid: requires s_start < s_end");
  Grid g;
  g.spacing_m = (s_end_m - s_start_m) / (m - 1);
  g.points_m.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) g.points_m[i] = s_start_m + g.spacing_m * i;
  g.points_m.front() = s_start_m;
  g.points_m.back() = s_end_m;
  return g;
}

std::vector<double> plan_search_points(const Scenario& scenario,
                                       const Grid& grid) {
  std::vector<double> pts = grid.points_m;
  for (const SensorSpec& s : scenario.sensors) pts.push_back(s.position_m);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace uavplan
