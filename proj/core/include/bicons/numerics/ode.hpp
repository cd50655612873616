#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "bicons/errors.hpp"

namespace bicons::numerics {

template <std::size_t N>
using OdeState = std::array<double, N>;

template <std::size_t N>
OdeState<N> axpy(const OdeState<N>& y, double h, const OdeState<N>& k) {
  OdeState<N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + h * k[i];
  return out;
}

/// Classical fourth-order Runge-Kutta step for a generic state supporting
/// `state + h * derivative` through the supplied combine functor.
template <class State, class Rhs, class Combine>
State rk4_step(const State& y, double t, double h, Rhs&& rhs, Combine&& combine) {
  const State k1 = rhs(t, y);
  const State k2 = rhs(t + 0.5 * h, combine(y, 0.5 * h, k1));
  const State k3 = rhs(t + 0.5 * h, combine(y, 0.5 * h, k2));
  const State k4 = rhs(t + h, combine(y, h, k3));
  State out = combine(y, h / 6.0, k1);
  out = combine(out, h / 3.0, k2);
  out = combine(out, h / 3.0, k3);
  return combine(out, h / 6.0, k4);
}

struct AdaptiveOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  /// Optional per-component absolute tolerances overriding abs_tol.
  std::vector<double> abs_tol_components;
  double initial_step = 1e-2;
  double max_step = 0.5;
  double min_step = 1e-14;
  std::size_t max_steps = 10'000'000;
};

/// Accepted step of an adaptive integration; `dydt` is kept for Hermite dense output.
template <std::size_t N>
struct OdeSample {
  double t;
  OdeState<N> y;
  OdeState<N> dydt;
};

/// Dormand-Prince 5(4) with PI step-size control. Integrates from t0 to t1 > t0
/// and returns every accepted step (first entry is the initial point).
/// Throws NumericalFailure when the step size collapses below min_step.
template <std::size_t N, class Rhs>
std::vector<OdeSample<N>> integrate_dopri5(Rhs&& rhs, double t0, const OdeState<N>& y0, double t1,
                                            const AdaptiveOptions& opt = {}) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                          b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  std::vector<OdeSample<N>> out;
  double t = t0;
  OdeState<N> y = y0;
  OdeState<N> k1 = rhs(t, y);
  out.push_back({t, y, k1});
  if (t1 <= t0) return out;

  double h = std::min({opt.initial_step, opt.max_step, t1 - t0});
  double err_prev = 1e-4;
  std::size_t steps = 0;
  OdeState<N> tmp, k2, k3, k4, k5, k6, k7, ynew;

  while (t < t1) {
    if (++steps > opt.max_steps) throw NumericalFailure("dopri5: step budget exhausted");
    bool last = false;
    if (t + h >= t1) {
      h = t1 - t;
      last = true;
    }
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    k2 = rhs(t + c2 * h, tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    k3 = rhs(t + c3 * h, tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    k4 = rhs(t + c4 * h, tmp);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    k5 = rhs(t + c5 * h, tmp);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    k6 = rhs(t + h, tmp);
    for (std::size_t i = 0; i < N; ++i)
      ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    k7 = rhs(t + h, ynew);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double atol = opt.abs_tol_components.empty() ? opt.abs_tol : opt.abs_tol_components[i];
      const double sc = atol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      if (sc > 0.0) err += (ei / sc) * (ei / sc);
    }
    err = std::sqrt(err / static_cast<double>(N));

    if (err <= 1.0) {
      t = last ? t1 : t + h;
      y = ynew;
      k1 = k7;
      out.push_back({t, y, k1});
      const double fac = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.7 / 5) * std::pow(err_prev, 0.4 / 5);
      h *= std::clamp(fac, 0.2, 5.0);
      err_prev = std::max(err, 1e-4);
    } else {
      h *= std::max(0.2, 0.9 * std::pow(err, -1.0 / 5));
    }
    h = std::min(h, opt.max_step);
    if (h < opt.min_step * std::max(1.0, std::abs(t))) {
      throw NumericalFailure("dopri5: step size collapsed at t = " + std::to_string(t));
    }
  }
  return out;
}

/// Cubic Hermite interpolation between two accepted samples.
template <std::size_t N>
OdeState<N> hermite_interpolate(const OdeSample<N>& a, const OdeSample<N>& b, double t) {
  const double h = b.t - a.t;
  const double s = (t - a.t) / h;
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  const double h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s);
  const double h11 = s * s * (s - 1);
  OdeState<N> out;
  for (std::size_t i = 0; i < N; ++i)
    out[i] = h00 * a.y[i] + h10 * h * a.dydt[i] + h01 * b.y[i] + h11 * h * b.dydt[i];
  return out;
}

}  // namespace bicons::numerics
