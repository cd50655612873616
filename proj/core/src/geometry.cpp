#include "bicons/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "bicons/errors.hpp"
#include "bicons/numerics/finite_difference.hpp"
#include "bicons/parallel.hpp"

namespace bicons {

namespace {

constexpr double kSqrt3 = 1.7320508075688772935;

std::string grid_spec(const SweepOptions& opt, std::size_t kept) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "uniform n=%d on [%.17g, %.17g], %zu points after junction guard", opt.n, opt.a,
                opt.b, kept);
  return buf;
}

struct Sweep {
  std::vector<double> rho;
  std::vector<double> residual;
  std::string spec;
};

template <class Fn>
Sweep run_sweep(const GluedMetric& gm, const SweepOptions& opt, Fn&& fn) {
  Sweep s;
  s.rho = gm.guarded_grid(opt.a, opt.b, opt.n);
  s.residual.assign(s.rho.size(), 0.0);
  parallel_for(s.rho.size(), opt.workers, [&](std::size_t i) { s.residual[i] = fn(s.rho[i]); });
  s.spec = grid_spec(opt, s.rho.size());
  return s;
}

struct KJet {
  double F, dF, d2F;
  double K, dK, d2K;
  double G, dG, d2G;  // Gamma and its derivatives
};

KJet k_jet(const GluedMetric& gm, double rho) {
  const ProfileJet j = gm.profile().jet(rho);
  KJet k{};
  k.F = j.F;
  k.dF = j.dF;
  k.d2F = j.d2F;
  const double F23 = std::cbrt(j.F * j.F);
  const double F53 = F23 * j.F;
  k.K = gm.eps().as_double() - F53 * j.F / 9.0;
  k.dK = -(8.0 / 27.0) * F53 * j.dF;
  k.d2K = -(8.0 / 27.0) * ((5.0 / 3.0) * F23 * j.dF * j.dF + F53 * j.d2F);
  k.G = 1.0 / j.F;
  k.dG = -j.dF / (j.F * j.F);
  k.d2G = (2.0 * j.dF * j.dF - j.F * j.d2F) / (j.F * j.F * j.F);
  return k;
}

double central_second(const GluedMetric& gm, double rho, double h, double (*g)(double, double), double eps) {
  return numerics::central_derivative([&](double r) { return g(gm.profile().F(r), eps); }, rho, h, 2, 3);
}

double k_of_F(double F, double eps) { return eps - std::pow(F, 8.0 / 3.0) / 9.0; }

}  // namespace

GluedMetric::GluedMetric(GluedProfile gp) : gp_(std::move(gp)) {}

GluedMetric::GammaJet GluedMetric::gamma_jet(double rho) const {
  const ProfileJet j = gp_.jet(rho);
  return {1.0 / j.F, -j.dF / (j.F * j.F), (2.0 * j.dF * j.dF - j.F * j.d2F) / (j.F * j.F * j.F)};
}

std::array<double, 3> GluedMetric::components(double rho) const {
  const double G = 1.0 / gp_.F(rho);
  return {1.0, 0.0, G * G};
}

std::vector<double> GluedMetric::guarded_grid(double a, double b, int n) const {
  if (!(b > a) || n < 2) throw DomainError("guarded_grid: need a < b and n >= 2");
  const auto junctions = gp_.lattice().junctions_in(a - guard_band(), b + guard_band());
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double rho = i == n - 1 ? b : a + (b - a) * i / (n - 1);
    bool near = false;
    for (const auto& jn : junctions) near = near || std::abs(rho - jn.second) < guard_band();
    if (!near) out.push_back(rho);
  }
  return out;
}

CurvatureSample curvature_sample(double rho, const GluedMetric& gm) {
  const KJet k = k_jet(gm, rho);
  CurvatureSample s;
  s.rho = rho;
  s.K = k.K;
  s.dK_drho = k.dK;
  s.d2K_drho2 = k.d2K;
  s.omega = 3.0 * k.dK / (8.0 * (gm.eps().as_double() - k.K));
  s.kappa = std::abs(s.omega);
  return s;
}

double gauss_curvature(double rho, const GluedMetric& gm) {
  return gm.eps().as_double() - std::pow(gm.profile().F(rho), 8.0 / 3.0) / 9.0;
}

double grad_K_xi_form(double xi, const GluedMetric& gm) {
  const auto& sol = gm.profile().solution();
  const auto& r = sol.roots();
  if (!(xi > r.xi01 && xi < r.xi02)) throw DomainError("grad_K_xi_form: xi outside the open root interval");
  const double T = potential_T(xi, gm.eps(), gm.C());
  return xi * xi * T / 3.0 * (-(8.0 / 27.0) * std::pow(xi, 5.0 / 3.0));
}

double omega(double rho, const GluedMetric& gm) { return curvature_sample(rho, gm).omega; }

double level_circle_curvature(double rho, const GluedMetric& gm) {
  const KJet k = k_jet(gm, rho);
  return 3.0 * std::abs(k.dK) / (8.0 * (gm.eps().as_double() - k.K));
}

double mean_curvature_f(double rho, const GluedMetric& gm) {
  return 2.0 * std::pow(gm.profile().F(rho), 4.0 / 3.0) / (3.0 * kSqrt3);
}

SweepOptions default_sweep(const GluedMetric& gm, int n, int workers) {
  const auto [a, b] = gm.default_window();
  return {a, b, n, workers};
}

ResidualReport verify_curvature_ode(const GluedMetric& gm, const SweepOptions& opt) {
  const double e = gm.eps().as_double();
  const double h = 1e-3 * gm.profile().block_scale();
  auto s = run_sweep(gm, opt, [&](double rho) {
    const KJet k = k_jet(gm, rho);
    const double m = e - k.K;
    return (24.0 * m * k.d2K + 33.0 * k.dK * k.dK + 64.0 * k.K * m * m) / std::max(1.0, std::abs(k.K * k.K * k.K));
  });
  // Same identity with K'' from central differences of K(F(rho)).
  double fd_max = 0.0;
  for (double rho : s.rho) {
    const KJet k = k_jet(gm, rho);
    const double m = e - k.K;
    const double d2K = central_second(gm, rho, h, k_of_F, e);
    const double r = (24.0 * m * d2K + 33.0 * k.dK * k.dK + 64.0 * k.K * m * m) / std::max(1.0, std::abs(k.K * k.K * k.K));
    fd_max = std::max(fd_max, std::abs(r));
  }
  auto rep = summarize_residuals("curvature_ode", s.spec, s.residual, 1e-6, gm.guard_band());
  rep.extras.emplace_back("fd_max_residual", fd_max);
  return rep;
}

ResidualReport verify_laplace_identity(const GluedMetric& gm, const SweepOptions& opt) {
  const double e = gm.eps().as_double();
  auto s = run_sweep(gm, opt, [&](double rho) {
    const KJet k = k_jet(gm, rho);
    const double m = e - k.K;
    const double lap = -(k.d2K + (k.dG / k.G) * k.dK);
    return (m * lap - k.dK * k.dK - (8.0 / 3.0) * k.K * m * m) / std::max(1.0, std::abs(k.K * k.K * k.K));
  });
  return summarize_residuals("laplace_identity", s.spec, s.residual, 1e-6, gm.guard_band(), kLaplacianConvention);
}

ResidualReport verify_bicons_pde(const GluedMetric& gm, const SweepOptions& opt) {
  const double e = gm.eps().as_double();
  const double c = 8.0 / (9.0 * kSqrt3);
  auto s = run_sweep(gm, opt, [&](double rho) {
    const KJet k = k_jet(gm, rho);
    const double F13 = std::cbrt(k.F);
    const double f = 2.0 * F13 * k.F / (3.0 * kSqrt3);
    const double df = c * F13 * k.dF;
    const double d2f = c * (k.dF * k.dF / (3.0 * F13 * F13) + F13 * k.d2F);
    const double lap = -(d2f + (k.dG / k.G) * df);
    const double f4 = f * f * f * f;
    return (f * lap + df * df + (4.0 / 3.0) * e * f * f - f4) / std::max(1.0, f4);
  });
  return summarize_residuals("bicons_pde", s.spec, s.residual, 1e-6, gm.guard_band(), kLaplacianConvention);
}

ResidualReport verify_gamma_curvature(const GluedMetric& gm, const SweepOptions& opt) {
  auto s = run_sweep(gm, opt, [&](double rho) {
    const KJet k = k_jet(gm, rho);
    return (k.K + k.d2G / k.G) / std::max(1.0, std::abs(k.K));
  });
  return summarize_residuals("gauss_curvature_from_gamma", s.spec, s.residual, 1e-6, gm.guard_band());
}

ResidualReport verify_connection_coefficient(const GluedMetric& gm, const SweepOptions& opt) {
  double worst_gamma = 0.0;
  auto s = run_sweep(gm, opt, [&](double rho) {
    const CurvatureSample c = curvature_sample(rho, gm);
    return std::abs(c.kappa - level_circle_curvature(rho, gm)) / std::max(1.0, c.kappa);
  });
  for (double rho : s.rho) {
    const KJet k = k_jet(gm, rho);
    const CurvatureSample c = curvature_sample(rho, gm);
    worst_gamma = std::max(worst_gamma, std::abs(c.omega - k.dG / k.G) / std::max(1.0, std::abs(c.omega)));
  }
  auto rep = summarize_residuals("omega_vs_level_circle_curvature", s.spec, s.residual, 1e-9, gm.guard_band());
  rep.extras.emplace_back("omega_vs_gamma_log_derivative", worst_gamma);
  if (!(worst_gamma <= 1e-7)) rep.passed = false;
  return rep;
}

ResidualReport verify_frame_relations(const GluedMetric& gm, const SweepOptions& opt) {
  const double scale = gm.profile().block_scale();
  auto s = run_sweep(gm, opt, [&](double rho) {
    // Step from the local length scale of the metric, capped by the block scale.
    const CurvatureSample cs = curvature_sample(rho, gm);
    const double h = 1e-3 * std::min(scale, 20.0 / std::max({std::abs(cs.omega), std::sqrt(std::abs(cs.K)), 1.0}));
    auto gtt = [&](double r) { return gm.components(r)[2]; };
    auto grr = [&](double r) { return gm.components(r)[0]; };
    auto inv_sqrt_gtt = [&](double r) { return 1.0 / std::sqrt(gm.components(r)[2]); };
    const double g = gtt(rho);
    const double dg = numerics::central_derivative(gtt, rho, h, 1, 3);
    const double dgrr = numerics::central_derivative(grr, rho, h, 1, 3);
    const double d_inv = numerics::central_derivative(inv_sqrt_gtt, rho, h, 1, 3);
    // Christoffel symbols of dr^2 + g_tt dtheta^2 (g_rr constant).
    const double chr_r_rr = 0.5 * dgrr;
    const double chr_r_tt = -0.5 * dg;
    const double chr_t_rt = 0.5 * dg / g;
    const double w = omega(rho, gm);
    const double sq = std::sqrt(g);
    const double n11 = std::abs(chr_r_rr);                            // nabla_X1 X1 = 0
    const double n12 = std::abs(d_inv * sq + chr_t_rt);               // nabla_X1 X2 = 0 (X2 component)
    const double n22 = std::abs(chr_r_tt / g + w);                    // nabla_X2 X2 = -omega X1
    const double n21 = std::abs(chr_t_rt - w);                        // nabla_X2 X1 = omega X2
    return std::max({n11, n12, n22, n21}) / std::max(1.0, std::abs(w));
  });
  return summarize_residuals("frame_relations", s.spec, s.residual, 1e-8, gm.guard_band());
}

ResidualReport verify_completeness_bound(const GluedMetric& gm, const SweepOptions& opt) {
  const double xi02 = gm.profile().solution().roots().xi02;
  const double m0 = std::min(1.0 / (xi02 * xi02), 1.0);
  SweepOptions o = opt;
  // Junctions are where the bound is attained; they stay in this grid.
  std::vector<double> grid;
  for (int i = 0; i < o.n; ++i) grid.push_back(o.a + (o.b - o.a) * i / (o.n - 1));
  for (const auto& jn : gm.profile().lattice().junctions_in(o.a, o.b)) grid.push_back(jn.second);
  std::vector<double> res(grid.size());
  double min_eig = std::numeric_limits<double>::infinity();
  parallel_for(grid.size(), o.workers, [&](std::size_t i) {
    const auto g = gm.components(grid[i]);
    const double e1 = g[0] - m0;
    const double e2 = g[2] - m0;
    res[i] = std::max(0.0, -std::min(e1, e2));
  });
  for (double rho : grid) {
    const auto g = gm.components(rho);
    min_eig = std::min({min_eig, g[0] - m0, g[2] - m0});
  }
  auto rep = summarize_residuals("completeness_comparison", grid_spec(o, grid.size()), res, 1e-14);
  rep.extras.emplace_back("m0", m0);
  rep.extras.emplace_back("min_eigenvalue", min_eig);
  return rep;
}

double expected_alpha(double C) { return 64.0 * C / (3.0 * kSqrt3); }

double first_integral_alpha(const GluedMetric& gm, double rho) {
  if (gm.profile().reduce(rho).x == 0.0) throw DomainError("first_integral_alpha: rho is a junction");
  const double e = gm.eps().as_double();
  const KJet k = k_jet(gm, rho);
  if (k.dK == 0.0) throw DomainError("first_integral_alpha: grad K vanishes at rho");
  const double K = k.K;
  const double poly = (64.0 / 3.0) * K * K * K - (640.0 / 9.0) * e * K * K + (704.0 / 9.0) * e * e * K -
                      (256.0 / 9.0) * e * e * e;
  return (k.dK * k.dK - poly) / std::pow(e - K, 11.0 / 4.0);
}

ResidualReport verify_first_integral(const GluedMetric& gm, const SweepOptions& opt) {
  const double target = expected_alpha(gm.C());
  const double scale = std::max(1.0, std::abs(target));
  auto s = run_sweep(gm, opt, [&](double rho) { return (first_integral_alpha(gm, rho) - target) / scale; });
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double rho : s.rho) {
    const double a = first_integral_alpha(gm, rho);
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  auto rep = summarize_residuals("first_integral_alpha", s.spec, s.residual, 1e-6, gm.guard_band());
  const double spread = (hi - lo) / std::max(1.0, std::abs(0.5 * (hi + lo)));
  rep.extras.emplace_back("alpha_expected", target);
  rep.extras.emplace_back("alpha_min", lo);
  rep.extras.emplace_back("alpha_max", hi);
  rep.extras.emplace_back("alpha_relative_spread", spread);
  if (!(spread <= 1e-6)) rep.passed = false;
  return rep;
}

}  // namespace bicons
