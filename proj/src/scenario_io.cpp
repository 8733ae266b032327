#include "uavplan/scenario_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "uavplan/single_sensor.hpp"

namespace uavplan {

using nlohmann::ordered_json;

namespace {

std::string line_of_byte(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  std::ostringstream os;
  os << line << ":" << col;
  return os.str();
}

ordered_json parse_json(const std::string& text, const std::string& origin) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::ostringstream os;
    os << origin << ":" << line_of_byte(text, e.byte) << ": " << e.what();
    throw ParseError(os.str());
  }
}

const ordered_json& require_key(const ordered_json& obj, const char* key,
                                const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError("missing key: " + path + "." + key);
  }
  return obj.at(key);
}

double require_number(const ordered_json& obj, const char* key,
                      const std::string& path) {
  const ordered_json& v = require_key(obj, key, path);
  if (!v.is_number())
    throw ParseError("expected a number at " + path + "." + key);
  return v.get<double>();
}

double optional_number(const ordered_json& obj, const char* key, double fallback) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  const ordered_json& v = obj.at(key);
  if (!v.is_number()) throw ParseError(std::string("expected a number at ") + key);
  return v.get<double>();
}

ChannelParams channel_from(const ordered_json& doc, const std::string& root) {
  const ordered_json& chj = require_key(doc, "channel", root);
  const std::string path = root + ".channel";
  const double h_m = require_number(chj, "H_m", path);
  const double beta_db = require_number(chj, "beta_dB", path);
  const double w_hz = require_number(chj, "W_Hz", path);
  const double alpha = require_number(chj, "alpha", path);
  try {
    return ChannelParams::from_db(h_m, beta_db, w_hz, alpha);
  } catch (const std::invalid_argument& e) {
    throw ParseError(path + ": " + e.what());
  }
}

SolverOptions solver_from(const ordered_json& doc) {
  SolverOptions opts;
  if (doc.contains("solver")) {
    const ordered_json& s = doc.at("solver");
    opts.grid_points =
        static_cast<int>(optional_number(s, "grid_points", opts.grid_points));
    opts.speed_tol_mps = optional_number(s, "speed_tol_mps", opts.speed_tol_mps);
    opts.hover_tol_rel = optional_number(s, "hover_tol_rel", opts.hover_tol_rel);
    if (opts.grid_points < 2)
      throw ParseError("solver.grid_points: must be >= 2");
    if (!(opts.speed_tol_mps > 0.0))
      throw ParseError("solver.speed_tol_mps: must be > 0");
    if (!(opts.hover_tol_rel > 0.0))
      throw ParseError("solver.hover_tol_rel: must be > 0");
  }
  return opts;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

ScenarioDocument parse_scenario_text(const std::string& text,
                                     const std::string& origin) {
  const ordered_json doc = parse_json(text, origin);
  ScenarioDocument out;
  out.scenario.channel = channel_from(doc, origin);

  const ordered_json& uav = require_key(doc, "uav", origin);
  out.scenario.v_max_mps = require_number(uav, "v_max_mps", origin + ".uav");
  out.scenario.s_start_m = require_number(uav, "s_start_m", origin + ".uav");
  out.scenario.s_end_m = require_number(uav, "s_end_m", origin + ".uav");

  const ordered_json& sensors = require_key(doc, "sensors", origin);
  if (!sensors.is_array())
    throw ParseError(origin + ".sensors: expected an array");
  for (std::size_t i = 0; i < sensors.size(); ++i) {
    std::ostringstream path;
    path << origin << ".sensors[" << i << "]";
    const ordered_json& sj = sensors.at(i);
    SensorSpec s;
    s.position_m = require_number(sj, "position_m", path.str());
    s.bits = require_number(sj, "bits", path.str());
    s.energy_j = require_number(sj, "energy_J", path.str());
    out.scenario.sensors.push_back(s);
  }

  out.solver = solver_from(doc);

  try {
    out.scenario.validate();  // InfeasibleError propagates as-is
  } catch (const std::invalid_argument& e) {
    throw ParseError(origin + ": " + e.what());
  }
  return out;
}

ScenarioDocument parse_scenario(const std::string& path) {
  return parse_scenario_text(read_text_file(path), path);
}

MonteCarloDocument parse_montecarlo_config_text(const std::string& text,
                                                const std::string& origin) {
  const ordered_json doc = parse_json(text, origin);
  MonteCarloDocument out;
  out.config.channel = channel_from(doc, origin);

  const ordered_json& uav = require_key(doc, "uav", origin);
  out.config.v_max_mps = require_number(uav, "v_max_mps", origin + ".uav");
  out.config.s_start_m = require_number(uav, "s_start_m", origin + ".uav");
  out.config.s_end_m = require_number(uav, "s_end_m", origin + ".uav");

  const ordered_json& ens = require_key(doc, "ensemble", origin);
  const std::string epath = origin + ".ensemble";
  out.config.sensor_count =
      static_cast<int>(require_number(ens, "sensor_count", epath));
  out.config.trials = static_cast<int>(require_number(ens, "trials", epath));
  out.config.seed =
      static_cast<std::uint64_t>(require_number(ens, "seed", epath));
  out.config.mean_bits = require_number(ens, "mean_bits", epath);
  out.config.mean_energy_j = require_number(ens, "mean_energy_J", epath);

  const ordered_json& sweep = require_key(doc, "sweep", origin);
  const ordered_json& pj = require_key(sweep, "param", origin + ".sweep");
  if (!pj.is_string() || (pj != "B" && pj != "E"))
    throw ParseError(origin + ".sweep.param: expected \"B\" or \"E\"");
  out.param = (pj == "B") ? SweepParam::bits : SweepParam::energy;
  const ordered_json& vals = require_key(sweep, "values", origin + ".sweep");
  if (!vals.is_array() || vals.empty())
    throw ParseError(origin + ".sweep.values: expected a non-empty array");
  for (const auto& v : vals) {
    if (!v.is_number())
      throw ParseError(origin + ".sweep.values: expected numbers");
    out.values.push_back(v.get<double>());
  }

  out.solver = solver_from(doc);
  return out;
}

MonteCarloDocument parse_montecarlo_config(const std::string& path) {
  return parse_montecarlo_config_text(read_text_file(path), path);
}

ordered_json scenario_to_json(const Scenario& scenario,
                              const SolverOptions& solver) {
  ordered_json j;
  j["channel"] = {{"H_m", scenario.channel.altitude_m},
                  {"beta_dB", scenario.channel.beta_db},
                  {"beta_linear", scenario.channel.beta},
                  {"W_Hz", scenario.channel.bandwidth_hz},
                  {"alpha", scenario.channel.alpha}};
  j["uav"] = {{"v_max_mps", scenario.v_max_mps},
              {"s_start_m", scenario.s_start_m},
              {"s_end_m", scenario.s_end_m}};
  j["sensors"] = ordered_json::array();
  for (const SensorSpec& s : scenario.sensors)
    j["sensors"].push_back({{"position_m", s.position_m},
                            {"bits", s.bits},
                            {"energy_J", s.energy_j}});
  j["solver"] = {{"grid_points", solver.grid_points},
                 {"speed_tol_mps", solver.speed_tol_mps},
                 {"hover_tol_rel", solver.hover_tol_rel}};
  return j;
}

std::string serialize_scenario(const Scenario& scenario,
                               const SolverOptions& solver) {
  return scenario_to_json(scenario, solver).dump(2) + "\n";
}

ordered_json plan_report(const Scenario& scenario, const SolverOptions& solver,
                         const FlightPlan& plan, const PlanReportMeta& meta) {
  ordered_json j;
  j["scenario"] = scenario_to_json(scenario, solver);
  j["solver_run"] = {{"algorithm", meta.algorithm},
                     {"grid_points", meta.grid_points},
                     {"search_points", meta.search_points},
                     {"speed_tol_mps", meta.speed_tol_mps},
                     {"hover_tol_rel", meta.hover_tol_rel},
                     {"states_evaluated", meta.states_evaluated},
                     {"states_copied", meta.states_copied},
                     {"stage_cost_evaluations", meta.stage_cost_evals}};
  j["segments"] = ordered_json::array();
  for (const PlanSegment& seg : plan.segments) {
    ordered_json sj;
    sj["sensor_index"] = seg.sensor_index;
    sj["mode"] = seg.mode == SegmentMode::hover ? "hover" : "fly";
    sj["x_m"] = seg.interval.x_m;
    sj["y_m"] = seg.interval.y_m;
    if (seg.speed_mps) sj["speed_mps"] = *seg.speed_mps;
    sj["time_s"] = seg.time_s;
    if (seg.water_level) sj["water_level"] = *seg.water_level;
    if (seg.power_w) {
      if (seg.mode == SegmentMode::hover)
        sj["hover_power_W"] = *seg.power_w;
      else
        sj["const_power_W"] = *seg.power_w;
    }
    j["segments"].push_back(sj);
  }
  j["total_time_s"] = plan.total_time_s;
  return j;
}

double plan_report_max_time_error(const ordered_json& report) {
  const ScenarioDocument doc =
      parse_scenario_text(report.at("scenario").dump(), "report.scenario");
  double worst = 0.0;
  for (const auto& sj : report.at("segments")) {
    const int sensor = sj.at("sensor_index").get<int>() - 1;
    const SensorSpec& sn = doc.scenario.sensors.at(sensor);
    const double x = sj.at("x_m").get<double>();
    const double y = sj.at("y_m").get<double>();
    const double recorded = sj.at("time_s").get<double>();
    double recomputed;
    if (sj.at("mode") == "hover") {
      recomputed =
          hover_time(sn, x, doc.scenario.channel, doc.solver.hover_tol_rel);
    } else {
      recomputed = (y - x) / sj.at("speed_mps").get<double>();
    }
    worst = std::max(worst,
                     std::fabs(recomputed - recorded) / std::max(1.0, recorded));
  }
  return worst;
}

std::string format_csv_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "param,x_m,y_m,v_mps,mode,total_time_s\n";
  for (const SweepRow& r : rows) {
    os << format_csv_value(r.param) << ',' << format_csv_value(r.x_m) << ','
       << format_csv_value(r.y_m) << ',' << format_csv_value(r.v_mps) << ','
       << (r.mode == SegmentMode::hover ? "hover" : "fly") << ','
       << format_csv_value(r.total_time_s) << '\n';
  }
  return os.str();
}

std::string curve_csv(const std::vector<CurvePoint>& points) {
  std::ostringstream os;
  os << "param,mean_time_s,stddev_time_s,trials_ok,trials,"
        "eff_mean_bits,eff_mean_energy_J\n";
  for (const CurvePoint& p : points) {
    os << format_csv_value(p.param_value) << ','
       << format_csv_value(p.mean_time_s) << ','
       << format_csv_value(p.stddev_time_s) << ',' << p.trials_succeeded << ','
       << p.trials_total << ',' << format_csv_value(p.eff_mean_bits) << ','
       << format_csv_value(p.eff_mean_energy_j) << '\n';
  }
  return os.str();
}

}  // namespace uavplan
