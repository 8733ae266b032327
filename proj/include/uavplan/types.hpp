#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "uavplan/channel.hpp"

namespace uavplan {

/// A data requirement that cannot be met with the available energy: a sensor
/// that fails the feasibility threshold, an unsolvable hover, or a plan with
/// no feasible action sequence. Distinct from argument errors so callers can
/// map it to its own exit code.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SensorSpec {
  double position_m = 0.0;
  double bits = 0.0;      // data requirement
  double energy_j = 0.0;  // transmit energy budget
};

/// Horizontal interval. x == y denotes a hover point.
struct Interval {
  double x_m = 0.0;
  double y_m = 0.0;
  double width() const { return y_m - x_m; }
};

struct SolverOptions {
  int grid_points = 201;
  double speed_tol_mps = 1e-6;
  double hover_tol_rel = 1e-9;
  unsigned threads = 0;  // 0 = hardware default
};

struct Scenario {
  double s_start_m = 0.0;
  double s_end_m = 0.0;
  double v_max_mps = 0.0;
  std::vector<SensorSpec> sensors;  // positions strictly increasing
  ChannelParams channel;

  double route_length_m() const { return s_end_m - s_start_m; }
  /// Structural checks throw std::invalid_argument; sensors that fail the
  /// feasibility threshold raise InfeasibleError listing every offender.
  void validate() const;
};

enum class SegmentMode { hover, fly };

struct PlanSegment {
  int sensor_index = 0;  // 1-based label, matching report files
  SegmentMode mode = SegmentMode::fly;
  Interval interval;  // absolute coordinates
  std::optional<double> speed_mps;
  double time_s = 0.0;
  std::optional<double> water_level;  // water-filling segments
  std::optional<double> power_w;      // constant-power segments
};

/// Time the segment adds on top of cruising the route at v_max.
inline double segment_extra_s(const PlanSegment& seg, double v_max_mps) {
  if (seg.mode == SegmentMode::hover) return seg.time_s;
  return seg.interval.width() * (1.0 / *seg.speed_mps - 1.0 / v_max_mps);
}

struct FlightPlan {
  std::vector<PlanSegment> segments;
  double total_time_s = 0.0;
};

FlightPlan make_flight_plan(const Scenario& scenario,
                            std::vector<PlanSegment> segments);

/// Uniformly spaced positions over [s_start, s_end], endpoints exact.
struct Grid {
  std::vector<double> points_m;
  double spacing_m = 0.0;

  static Grid make(double s_start_m, double s_end_m, int m);
  int size() const { return static_cast<int>(points_m.size()); }
};

/// Candidate positions shared by the grid planners: the grid points plus the
/// sensor positions (sorted, deduplicated). Keeping the sensors in the menu
/// lets a plan hover exactly overhead even when a sensor sits between grid
/// points, which in turn keeps every feasible scenario solvable.
std::vector<double> plan_search_points(const Scenario& scenario,
                                       const Grid& grid);

}  // namespace uavplan
