#pragma once

#include <cmath>

namespace uavplan {

/// log2(1 + x), stable for small x.
inline double log2p1(double x) { return std::log1p(x) / M_LN2; }

/// Line-of-sight ground-to-air link constants. `beta` is the reference SNR
/// at 1 m as a linear power ratio; configuration files carry it in dB.
struct ChannelParams {
  double altitude_m = 0.0;
  double beta = 0.0;
  double beta_db = 0.0;  // as configured, kept so files round-trip exactly
  double bandwidth_hz = 0.0;
  double alpha = 2.0;  // pathloss exponent, >= 2

  static ChannelParams from_db(double altitude_m, double beta_db,
                               double bandwidth_hz, double alpha);
  void validate() const;
};

/// Inverse channel gain (s^2 + H^2)^(alpha/2) / beta at horizontal offset s
/// from the sensor. Even in s, minimal at s = 0.
double inverse_gain(double offset_m, const ChannelParams& ch);

/// Uplink rate in bits/s for transmit power p at offset s.
double instantaneous_rate(double power_w, double offset_m,
                          const ChannelParams& ch);

/// Integral of (s^2 + H^2)^(alpha/2) over [x, y]. Closed form for alpha = 2,
/// adaptive quadrature otherwise.
double pathloss_integral(double x_m, double y_m, const ChannelParams& ch);

namespace detail {
// Quadrature route, used for alpha != 2 and as the cross-check of the
// alpha = 2 closed form.
double pathloss_integral_quadrature(double x_m, double y_m,
                                    const ChannelParams& ch);
}  // namespace detail

}  // namespace uavplan
