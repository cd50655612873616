#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "bicons/errors.hpp"

namespace bicons::numerics {

struct RootOptions {
  double x_rel_tol = 1e-15;
  double f_abs_tol = 0.0;
  int max_iterations = 200;
};

/// Newton iteration safeguarded by bisection on a sign-changing bracket [lo, hi].
/// `fdf(x)` returns {f(x), f'(x)}. The bracket endpoints need not be ordered by sign.
template <class FdF>
double safeguarded_newton(FdF&& fdf, double lo, double hi, double seed, const RootOptions& opt = {}) {
  auto [flo, dlo] = fdf(lo);
  auto [fhi, dhi] = fdf(hi);
  (void)dlo;
  (void)dhi;
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0)) throw NumericalFailure("safeguarded_newton: bracket does not change sign");
  // Orient so that f(lo) < 0 < f(hi).
  if (flo > 0) std::swap(lo, hi);

  double x = (seed > std::min(lo, hi) && seed < std::max(lo, hi)) ? seed : 0.5 * (lo + hi);
  double dx_old = std::abs(hi - lo);
  double dx = dx_old;
  for (int it = 0; it < opt.max_iterations; ++it) {
    auto [f, df] = fdf(x);
    if (f == 0.0 || std::abs(f) <= opt.f_abs_tol) return x;
    if (f < 0) lo = x;
    else hi = x;
    const double newton = (df != 0.0) ? x - f / df : std::nan("");
    const bool inside = std::isfinite(newton) && (newton - lo) * (newton - hi) < 0.0;
    if (!inside || std::abs(2.0 * f) > std::abs(dx_old * df)) {
      dx_old = dx;
      dx = 0.5 * (hi - lo);
      x = lo + dx;
    } else {
      dx_old = dx;
      dx = newton - x;
      x = newton;
    }
    if (std::abs(dx) <= opt.x_rel_tol * std::max(std::abs(x), 1e-300) || lo == hi) return x;
  }
  throw NumericalFailure("safeguarded_newton: no convergence after " + std::to_string(opt.max_iterations) +
                         " iterations");
}

}  // namespace bicons::numerics
