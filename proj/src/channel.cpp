#include "uavplan/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "uavplan/quadrature.hpp"

namespace uavplan {

ChannelParams ChannelParams::from_db(double altitude_m, double beta_db,
                                     double bandwidth_hz, double alpha) {
  ChannelParams ch;
  ch.altitude_m = altitude_m;
  ch.beta_db = beta_db;
  ch.beta = std::pow(10.0, beta_db / 10.0);
  ch.bandwidth_hz = bandwidth_hz;
  ch.alpha = alpha;
  ch.validate();
  return ch;
}

void ChannelParams::validate() const {
  if (!(altitude_m > 0.0))
    throw std::invalid_argument("channel: altitude_m must be > 0");
  if (!(beta > 0.0))
    throw std::invalid_argument("channel: beta must be > 0 (linear ratio)");
  if (!(bandwidth_hz > 0.0))
    throw std::invalid_argument("channel: bandwidth_hz must be > 0");
  if (!(alpha >= 2.0))
    throw std::invalid_argument("channel: alpha must be >= 2");
}

double inverse_gain(double offset_m, const ChannelParams& ch) {
  const double d2 = offset_m * offset_m + ch.altitude_m * ch.altitude_m;
  return std::pow(d2, 0.5 * ch.alpha) / ch.beta;
}

double instantaneous_rate(double power_w, double offset_m,
                          const ChannelParams& ch) {
  if (power_w < 0.0)
    throw std::invalid_argument("instantaneous_rate: power must be >= 0");
  return 0.5 * ch.bandwidth_hz * log2p1(power_w / inverse_gain(offset_m, ch));
}

double pathloss_integral(double x_m, double y_m, const ChannelParams& ch) {
  if (x_m > y_m)
    throw std::invalid_argument("pathloss_integral: requires x <= y");
  if (x_m == y_m) return 0.0;
  if (ch.alpha == 2.0) {
    const double h2 = ch.altitude_m * ch.altitude_m;
    return (y_m - x_m) * ((x_m * x_m + x_m * y_m + y_m * y_m) / 3.0 + h2);
  }
  return detail::pathloss_integral_quadrature(x_m, y_m, ch);
}

namespace detail {

double pathloss_integral_quadrature(double x_m, double y_m,
                                    const ChannelParams& ch) {
  const double h2 = ch.altitude_m * ch.altitude_m;
  const double half_alpha = 0.5 * ch.alpha;
  return integrate(
      [h2, half_alpha](double s) { return std::pow(s * s + h2, half_alpha); },
      x_m, y_m, 1e-10);
}

}  // namespace detail

}  // namespace uavplan
