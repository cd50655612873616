#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "bicons/errors.hpp"
#include "bicons/geometry.hpp"
#include "bicons/numerics/finite_difference.hpp"
#include "bicons/numerics/quadrature.hpp"

namespace bicons {

namespace {

const double k3q = std::pow(3.0, 0.75);  // 3^{3/4}
constexpr double kSqrt3 = 1.7320508075688772935;

}  // namespace

std::pair<double, double> isothermal_window(const GluedMetric& gm) {
  const auto& lat = gm.profile().lattice();
  const double lo = lat.lattice_point(-1);
  const double hi = lat.periodic() ? lat.lattice_point(1) : lo + 2.0 * gm.profile().block_scale();
  const double trim = 0.05 * (hi - lo);
  return {lo + trim, hi - trim};
}

ResidualReport verify_isothermal_form(const GluedMetric& gm, double a, double b, int n) {
  if (!(b > a) || n < 7) throw DomainError("verify_isothermal_form: need a < b and n >= 7");
  const GluedProfile& gp = gm.profile();
  const BlockCoordinate ba = gp.reduce(a);
  const BlockCoordinate bb = gp.reduce(b);
  if (ba.k != bb.k || ba.x == 0.0 || gp.lattice().junctions_in(a, b).size() > 0)
    throw DomainError("verify_isothermal_form: window must lie inside one block");

  const double e = gm.eps().as_double();
  const double acoef = gm.C() * kSqrt3;
  const double orient = -static_cast<double>(GluedProfile::parity_sign(ba.k));
  const auto N = static_cast<std::size_t>(n);

  std::vector<double> rho(N), F(N), sigma(N), E1(N), E2(N), su(N), suu(N);
  for (std::size_t j = 0; j < N; ++j) {
    rho[j] = j + 1 == N ? b : a + (b - a) * static_cast<double>(j) / (n - 1);
    const ProfileJet jt = gp.jet(rho[j]);
    F[j] = jt.F;
    sigma[j] = std::log(k3q / jt.F);
    E1[j] = std::cbrt(jt.F * jt.F) / kSqrt3;
    E2[j] = 3.0 * kSqrt3 / (jt.F * jt.F);
    su[j] = -orient * k3q * jt.dF / (jt.F * jt.F);
    suu[j] = -3.0 * kSqrt3 * (jt.d2F * jt.F - 2.0 * jt.dF * jt.dF) / (jt.F * jt.F * jt.F * jt.F);
  }

  // u(sigma) from du/dsigma = 1/sqrt(a - 3 e^{-2 sigma/3} - eps e^{2 sigma}).
  auto dudsigma = [&](double s) {
    const double rad = acoef - 3.0 * std::exp(-2.0 * s / 3.0) - e * std::exp(2.0 * s);
    return 1.0 / std::sqrt(rad);
  };
  std::vector<double> u(N, 0.0);
  for (std::size_t j = 1; j < N; ++j) {
    const auto q = numerics::integrate_gk15(dudsigma, sigma[j - 1], sigma[j], 1e-16, 1e-15);
    u[j] = u[j - 1] + q.value;
  }

  std::vector<double> res;
  double worst_analytic = 0.0;
  double worst_fd = 0.0;
  double worst_a = 0.0;
  double min_su = std::numeric_limits<double>::infinity();
  double min_su_fd = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < N; ++j) {
    const double scale = std::max(1.0, E1[j] + E2[j]);
    const double ra = (suu[j] - E1[j] + e * E2[j]) / scale;
    worst_analytic = std::max(worst_analytic, std::abs(ra));
    min_su = std::min(min_su, su[j]);
    res.push_back(ra);
    if (j < 2 || j + 2 >= N) continue;
    const double nodes[5] = {u[j - 2], u[j - 1], u[j], u[j + 1], u[j + 2]};
    const double vals[5] = {sigma[j - 2], sigma[j - 1], sigma[j], sigma[j + 1], sigma[j + 2]};
    const auto w1 = numerics::fornberg_weights(u[j], nodes, 1);
    const auto w2 = numerics::fornberg_weights(u[j], nodes, 2);
    double d1 = 0.0;
    double d2 = 0.0;
    for (int i = 0; i < 5; ++i) {
      d1 += w1[i] * vals[i];
      d2 += w2[i] * vals[i];
    }
    const double rf = (d2 - E1[j] + e * E2[j]) / scale;
    worst_fd = std::max(worst_fd, std::abs(rf));
    min_su_fd = std::min(min_su_fd, d1);
    res.push_back(rf);
    const double a_fd = d1 * d1 + 3.0 * E1[j] + e * E2[j];
    worst_a = std::max(worst_a, std::abs(a_fd - acoef) / std::max(1.0, acoef));
  }

  // u-chain check: |u_end - u_0| against Simpson of F / 3^{3/4} d rho.
  double simpson = 0.0;
  const std::size_t m = (N - 1) % 2 == 0 ? N - 1 : N - 2;
  const double h = (b - a) / (n - 1);
  for (std::size_t j = 0; j + 2 <= m; j += 2) simpson += h / 3.0 * (F[j] + 4.0 * F[j + 1] + F[j + 2]);
  simpson /= k3q;
  const double chain = std::abs(std::abs(u[m] - u[0]) - simpson) / std::max(1.0, simpson);

  char buf[200];
  std::snprintf(buf, sizeof buf, "uniform rho n=%d on [%.17g, %.17g] (block %lld), u by quadrature in sigma", n, a,
                b, ba.k);
  auto rep = summarize_residuals("isothermal_form", buf, res, 1e-6);
  rep.extras.emplace_back("analytic_max_residual", worst_analytic);
  rep.extras.emplace_back("fd_max_residual", worst_fd);
  rep.extras.emplace_back("a_recovery_relative_error", worst_a);
  rep.extras.emplace_back("a_expected", acoef);
  rep.extras.emplace_back("min_sigma_u_analytic", min_su);
  rep.extras.emplace_back("min_sigma_u_fd", min_su_fd);
  rep.extras.emplace_back("u_chain_relative_error", chain);
  if (!(worst_a <= 1e-7) || !(min_su > 0.0) || !(min_su_fd > 0.0)) rep.passed = false;
  return rep;
}

}  // namespace bicons
