#pragma once

// 50-digit reference quadrature of the profile integral, independent of the
// library: roots by bracketing in multiprecision, rho by tanh-sinh with the
// endpoint-distance form of the integrand.

#include <cmath>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace hp {

using Real = boost::multiprecision::cpp_bin_float_50;

inline Real T(const Real& x, const Real& C, int eps) {
  using boost::multiprecision::pow;
  return -pow(x, Real(8) / 3) + C * x * x - 3 * eps;
}

inline Real bracket_root(const Real& C, int eps, Real lo, Real hi) {
  auto f = [&](const Real& x) { return T(x, C, eps); };
  boost::math::tools::eps_tolerance<Real> tol(160);
  std::uintmax_t it = 400;
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, tol, it);
  return (r.first + r.second) / 2;
}

struct Roots {
  Real xi01;
  Real xi02;
};

inline Roots roots(double C, int eps) {
  using boost::multiprecision::pow;
  const Real c(C);
  if (eps == 0) return {Real(0), pow(c, Real(3) / 2)};
  if (eps == 1) {
    const Real star = pow(3 * c / 4, Real(3) / 2);
    return {bracket_root(c, eps, Real("1e-9"), star), bracket_root(c, eps, star, Real(1000))};
  }
  Real hi(1);
  while (T(hi, c, eps) > 0) hi *= 2;
  Real lo = C > 0 ? pow(3 * c / 4, Real(3) / 2) : Real(0);
  if (lo >= hi) lo = 0;
  return {Real(0), bracket_root(c, eps, lo, hi)};
}

/// int_a^b sqrt(3) / (tau sqrt(T(tau))) dtau; the tanh-sinh rule handles the
/// inverse-square-root singularity at a root endpoint.
inline Real profile_integral(double C, int eps, const Real& a, const Real& b) {
  const Real c(C);
  const Real s3 = boost::multiprecision::sqrt(Real(3));
  boost::math::quadrature::tanh_sinh<Real> ts(15);
  auto g = [&](const Real& x) -> Real {
    const Real t = T(x, c, eps);
    if (t <= 0) return Real(0);
    return s3 / (x * boost::multiprecision::sqrt(t));
  };
  return ts.integrate(g, a, b, Real("1e-30"));
}

/// T(root + d) for a root of T, written without cancellation against T(root) = 0:
/// -root^{8/3} expm1((8/3) log1p(d/root)) + C d (2 root + d).
inline double T_offset(double root, double d, double C) {
  return -std::pow(root, 8.0 / 3.0) * std::expm1((8.0 / 3.0) * std::log1p(d / root)) + C * d * (2.0 * root + d);
}

/// Double-precision tanh-sinh of int sqrt(3)/(tau sqrt T) between a root and
/// `other`, integrated in the offset from the root so the rule resolves the
/// singular end; signed like the plain integral from `root` to `other`.
inline double profile_integral_from_root(double C, double root, double other) {
  const double len = std::abs(other - root);
  const double dir = other > root ? 1.0 : -1.0;
  boost::math::quadrature::tanh_sinh<double> ts;
  auto g = [&](double d) {
    const double t = T_offset(root, dir * d, C);
    return t > 0.0 ? std::sqrt(3.0) / ((root + dir * d) * std::sqrt(t)) : 0.0;
  };
  return dir * ts.integrate(g, 0.0, len, 1e-15);
}

}  // namespace hp
