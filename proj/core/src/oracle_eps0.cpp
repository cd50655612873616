#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "bicons/errors.hpp"
#include "bicons/numerics/finite_difference.hpp"
#include "bicons/numerics/quadrature.hpp"
#include "bicons/oracle.hpp"
#include "json.hpp"

namespace bicons {

namespace {

const double k3q = std::pow(3.0, 0.75);

void require_flat(const GluedMetric& gm, const char* what) {
  if (gm.eps().value() != 0) throw DomainError(std::string(what) + ": the closed form exists for eps = 0 only");
}

}  // namespace

std::array<double, 3> explicit_immersion_eps0(double u, double v, double C) {
  if (!(C > 0.0)) throw DomainError("explicit_immersion_eps0: C must be positive");
  const double s = std::sqrt(C);
  const double ch = std::cosh(u);
  const double ch3 = ch * ch * ch;
  return {s / 3.0 * ch3 * std::cos(3.0 * v), s / 3.0 * ch3 * std::sin(3.0 * v),
          s / 2.0 * (0.5 * std::sinh(2.0 * u) + u)};
}

double oracle_constant(double C) { return 27.0 / (C * C * C * C); }

double oracle_u(double rho, const GluedMetric& gm) {
  require_flat(gm, "oracle_u");
  const auto& gp = gm.profile();
  const double r = gp.solution().roots().xi02;
  const ProfilePoint p = gp.point(rho);
  // sigma - sigma0 = log(xi02 / xi), kept exact near the junction via the chart coordinate.
  const double ds = p.chart == Chart::Upper ? -std::log1p(-p.coord * p.coord / r) : std::log(r / p.xi);
  const double sigma0 = std::log(k3q / r);
  const double base = 3.0 * std::exp(-2.0 * sigma0 / 3.0);  // equals a = C sqrt 3
  // u_iso = int_{sigma0}^{sigma} d tau / sqrt(a - 3 e^{-2 tau/3}); tau = sigma0 + t^2.
  auto integrand = [&](double t) { return 2.0 * t / std::sqrt(-base * std::expm1(-2.0 * t * t / 3.0)); };
  const double tend = std::sqrt(std::max(ds, 0.0));
  const auto q = numerics::integrate_gk15(integrand, 0.0, tend, 1e-16, 1e-14);
  const double mu = std::sqrt(gm.C() / (3.0 * std::sqrt(3.0)));
  const double side = gp.reduce(rho).k < 0 ? -1.0 : 1.0;
  return side * mu * q.value;
}

double oracle_u_closed_form(double rho, const GluedMetric& gm) {
  require_flat(gm, "oracle_u_closed_form");
  const double C = gm.C();
  const double y = (rho - gm.profile().lattice().rho_minus()) * C * C / std::sqrt(27.0);
  // s^3 + 3 s - 3 y = 0 has the single real root s = A - 1/A, A = cbrt(q + sqrt(q^2 + 1)).
  const double q = 1.5 * std::abs(y);
  const double A = std::cbrt(q + std::hypot(q, 1.0));
  const double s = std::copysign(A - 1.0 / A, y);
  return std::asinh(s);
}

double oracle_v(double theta, const GluedMetric& gm) {
  require_flat(gm, "oracle_v");
  return theta * std::sqrt(gm.C() / 27.0);
}

AlignmentReport compare_to_oracle(const ImmersionGrid& grid, const GluedMetric& gm, double theta_shift) {
  require_flat(gm, "compare_to_oracle");
  if (grid.eps.value() != 0) throw DomainError("compare_to_oracle: grid is not an eps = 0 grid");
  AlignmentReport rep;
  rep.theta_shift = theta_shift;
  const std::size_t n = grid.frames.size();
  Eigen::MatrixXd P(3, n), Q(3, n);
  for (int i = 0; i < grid.n_rho(); ++i) {
    const double rho = grid.rho[static_cast<std::size_t>(i)];
    const double u = oracle_u(rho, gm);
    rep.coordinate_chain_error = std::max(rep.coordinate_chain_error, std::abs(u - oracle_u_closed_form(rho, gm)));
    for (int j = 0; j < grid.n_theta(); ++j) {
      const auto k = static_cast<Eigen::Index>(static_cast<std::size_t>(i) * grid.theta.size() + j);
      const auto& x = grid.at(i, j).Phi;
      const auto o = explicit_immersion_eps0(u, oracle_v(grid.theta[static_cast<std::size_t>(j)] + theta_shift, gm),
                                             oracle_constant(gm.C()));
      for (int c = 0; c < 3; ++c) {
        P(c, k) = x[static_cast<std::size_t>(c)];
        Q(c, k) = o[static_cast<std::size_t>(c)];
      }
    }
  }
  const Eigen::Vector3d pc = P.rowwise().mean();
  const Eigen::Vector3d qc = Q.rowwise().mean();
  const Eigen::MatrixXd Pc = P.colwise() - pc;
  const Eigen::MatrixXd Qc = Q.colwise() - qc;
  const Eigen::Matrix3d H = Qc * Pc.transpose();
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(H, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Matrix3d R = svd.matrixV() * svd.matrixU().transpose();
  const Eigen::Vector3d t = pc - R * qc;
  double sq = 0.0;
  for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(n); ++k) {
    const double d = (R * Q.col(k) + t - P.col(k)).norm();
    rep.max_distance = std::max(rep.max_distance, d);
    sq += d * d;
  }
  rep.points = n;
  rep.rms_distance = n ? std::sqrt(sq / static_cast<double>(n)) : 0.0;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) rep.rotation[static_cast<std::size_t>(3 * r + c)] = R(r, c);
    rep.translation[static_cast<std::size_t>(r)] = t(r);
  }
  rep.rotation_det = R.determinant();
  rep.passed = n > 0 && rep.max_distance <= rep.threshold;
  return rep;
}

std::string AlignmentReport::to_json(int indent) const {
  nlohmann::json j;
  j["max_distance"] = max_distance;
  j["rms_distance"] = rms_distance;
  j["points"] = points;
  j["rotation"] = rotation;
  j["translation"] = translation;
  j["rotation_det"] = rotation_det;
  j["coordinate_chain_error"] = coordinate_chain_error;
  j["theta_shift"] = theta_shift;
  j["threshold"] = threshold;
  j["passed"] = passed;
  return j.dump(indent);
}

ResidualReport verify_oracle_metric(double C, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> du(-2.0, 2.0);
  std::uniform_real_distribution<double> dv(0.0, 2.0 * std::acos(-1.0));
  const double h = 1e-3;
  std::vector<double> res;
  for (int s = 0; s < samples; ++s) {
    const double u = du(rng);
    const double v = dv(rng);
    std::array<double, 3> pu{}, pv{};
    for (int c = 0; c < 3; ++c) {
      pu[static_cast<std::size_t>(c)] = numerics::central_derivative(
          [&](double x) { return explicit_immersion_eps0(x, v, C)[static_cast<std::size_t>(c)]; }, u, h, 1, 4);
      pv[static_cast<std::size_t>(c)] = numerics::central_derivative(
          [&](double x) { return explicit_immersion_eps0(u, x, C)[static_cast<std::size_t>(c)]; }, v, h, 1, 4);
    }
    double E = 0.0, F = 0.0, G = 0.0;
    for (std::size_t c = 0; c < 3; ++c) {
      E += pu[c] * pu[c];
      F += pu[c] * pv[c];
      G += pv[c] * pv[c];
    }
    const double ch = std::cosh(u);
    const double lam = C * std::pow(ch, 6);
    res.push_back(std::max({std::abs(E - lam), std::abs(G - lam), std::abs(F)}) / lam);
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d random (u, v) in [-2, 2] x [0, 2pi), seed %llu", samples,
                static_cast<unsigned long long>(seed));
  return summarize_residuals("oracle_first_fundamental_form", buf, res, 1e-9);
}

}  // namespace bicons
