#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bicons::numerics {

/// Finite-difference weights for the m-th derivative at x0 from arbitrary
/// nodes (Fornberg's recursion). Returns one weight per node.
inline std::vector<double> fornberg_weights(double x0, std::span<const double> nodes, int m) {
  const std::size_t n = nodes.size();
  std::vector<std::vector<double>> c(n, std::vector<double>(static_cast<std::size_t>(m) + 1, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min<std::size_t>(i, static_cast<std::size_t>(m));
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k)
          c[i][k] = c1 * (static_cast<double>(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k)
        c[j][k] = (c4 * c[j][k] - static_cast<double>(k) * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = c[i][static_cast<std::size_t>(m)];
  return w;
}

/// Central difference of order `order` for f at x with step h, using
/// 2*half_width+1 equally spaced points.
template <class Fn>
double central_derivative(Fn&& f, double x, double h, int order, int half_width = 3) {
  std::vector<double> offsets;
  for (int k = -half_width; k <= half_width; ++k) offsets.push_back(static_cast<double>(k));
  const auto w = fornberg_weights(0.0, offsets, order);
  double acc = 0.0;
  for (std::size_t i = 0; i < offsets.size(); ++i) acc += w[i] * f(x + offsets[i] * h);
  double scale = 1.0;
  for (int i = 0; i < order; ++i) scale *= h;
  return acc / scale;
}

/// One-sided difference: nodes x, x+dir*h, ..., x+dir*(npoints-1)*h with dir = +1 or -1.
template <class Fn>
double one_sided_derivative(Fn&& f, double x, double h, int order, int npoints, int dir) {
  std::vector<double> offsets;
  for (int k = 0; k < npoints; ++k) offsets.push_back(static_cast<double>(dir * k));
  const auto w = fornberg_weights(0.0, offsets, order);
  double acc = 0.0;
  for (std::size_t i = 0; i < offsets.size(); ++i) acc += w[i] * f(x + offsets[i] * h);
  double scale = 1.0;
  for (int i = 0; i < order; ++i) scale *= h;
  return acc / scale;
}

}  // namespace bicons::numerics
