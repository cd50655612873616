#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace bicons::numerics {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
  bool converged = false;
};

namespace detail {

// 15-point Kronrod abscissae on [-1, 1] (positive half, x[7] = 0) and weights;
// the embedded 7-point Gauss rule uses the odd-indexed abscissae.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool at_roundoff;
  bool operator<(const Panel& o) const { return error < o.error; }
};

// One Gauss-Kronrod 7/15 panel with the QUADPACK error heuristic.
template <class Fn>
Panel gk15_panel(Fn& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  double resabs = std::abs(resk);
  double fv1[7], fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv1[j] = f1;
    fv2[j] = f2;
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));

  const double ah = std::abs(half);
  resk *= half;
  resg *= half;
  resabs *= ah;
  resasc *= ah;

  double err = std::abs(resk - resg);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  const double floor = 50.0 * eps * resabs;
  bool at_roundoff = false;
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps) && floor >= err) {
    err = floor;
    at_roundoff = true;
  }
  return {a, b, resk, err, at_roundoff};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod 7/15 quadrature of f over [a, b].
/// Stops when the summed error estimate drops below max(abs_tol, rel_tol*|I|)
/// or after max_panels panels; `converged` reports which.
template <class Fn>
QuadratureResult integrate_gk15(Fn&& f, double a, double b, double abs_tol = 1e-14,
                                double rel_tol = 1e-14, int max_panels = 4000) {
  QuadratureResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<detail::Panel> heap;
  auto first = detail::gk15_panel(f, a, b);
  heap.push(first);
  double total = first.value;
  double total_err = first.error;
  int panels = 1;
  bool stalled_at_roundoff = false;
  while (total_err > std::max(abs_tol, rel_tol * std::abs(total)) && panels < max_panels) {
    detail::Panel worst = heap.top();
    // The largest remaining error is pure rounding; subdividing cannot help.
    if (worst.at_roundoff) {
      stalled_at_roundoff = true;
      break;
    }
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid == worst.a || mid == worst.b) {
      heap.push(worst);
      break;
    }
    auto left = detail::gk15_panel(f, worst.a, mid);
    auto right = detail::gk15_panel(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++panels;
  }
  // Re-sum to shed the cancellation accumulated by incremental updates.
  total = 0.0;
  total_err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    total_err += heap.top().error;
    heap.pop();
  }
  out.value = total;
  out.error = total_err;
  out.evaluations = 15 * (2 * panels - 1);
  out.converged = total_err <= std::max(abs_tol, rel_tol * std::abs(total)) || stalled_at_roundoff;
  return out;
}

}  // namespace bicons::numerics
