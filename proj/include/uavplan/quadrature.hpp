#pragma once

#include <cmath>
#include <utility>

namespace uavplan {

namespace detail {

// 15-point Kronrod / 7-point Gauss rule on [a,b]; returns {integral, error estimate}.
template <class F>
std::pair<double, double> gauss_kronrod_15(const F& f, double a, double b) {
  static const double xgk[7] = {
      0.991455371120813, 0.949107912342759, 0.864864423359769,
      0.741531185599394, 0.586087235467691, 0.405845151377397,
      0.207784955007898};
  static const double wgk[8] = {
      0.022935322010529, 0.063092092629979, 0.104790010322250,
      0.140653259715525, 0.169004726639267, 0.190350578064785,
      0.204432940075298, 0.209482141084728};
  static const double wg[4] = {
      0.129484966168870, 0.279705391489277, 0.381830050505119,
      0.417959183673469};

  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);

  const double fc = f(c);
  double resk = wgk[7] * fc;
  double resg = wg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double fv = f(c - h * xgk[j]) + f(c + h * xgk[j]);
    resk += wgk[j] * fv;
    if (j % 2 == 1) resg += wg[j / 2] * fv;
  }
  return {resk * h, std::fabs(resk - resg) * std::fabs(h)};
}

template <class F>
double integrate_rec(const F& f, double a, double b, double est, double err,
                     double tol_abs, int depth) {
  if (err <= tol_abs || depth <= 0) return est;
  const double m = 0.5 * (a + b);
  auto [le, lerr] = gauss_kronrod_15(f, a, m);
  auto [re, rerr] = gauss_kronrod_15(f, m, b);
  return integrate_rec(f, a, m, le, lerr, 0.5 * tol_abs, depth - 1) +
         integrate_rec(f, m, b, re, rerr, 0.5 * tol_abs, depth - 1);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod quadrature of f over [a,b] to the given relative
/// tolerance. Intended for smooth integrands.
template <class F>
double integrate(const F& f, double a, double b, double rel_tol = 1e-10) {
  if (a == b) return 0.0;
  auto [est, err] = detail::gauss_kronrod_15(f, a, b);
  const double tol_abs = rel_tol * std::max(std::fabs(est), 1e-300);
  return detail::integrate_rec(f, a, b, est, err, tol_abs, 48);
}

}  // namespace uavplan
