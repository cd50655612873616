#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "bicons/geometry.hpp"
#include "bicons/immersion.hpp"
#include "bicons/report.hpp"

namespace bicons {

/// Closed-form complete biconservative surface in R^3 with metric
/// C (cosh u)^6 (du^2 + dv^2):
///   ( sqrt(C)/3 cosh^3 u cos 3v, sqrt(C)/3 cosh^3 u sin 3v, sqrt(C)/2 (sinh(2u)/2 + u) ).
/// DomainError for C <= 0.
std::array<double, 3> explicit_immersion_eps0(double u, double v, double C);

/// Constant of the closed form matching the glued metric with parameter C: 27 / C^4.
double oracle_constant(double C);

/// Closed-form coordinate u of the rho-line through rho, obtained along
/// sigma = log(3^{3/4}/F), u_iso(sigma) by quadrature, u = sqrt(C / 3^{3/2}) u_iso.
/// Negative on the left of rho_{0,-1}. DomainError unless eps = 0.
double oracle_u(double rho, const GluedMetric& gm);
/// The same u from sinh u + sinh^3 u / 3 = (rho - rho_{0,-1}) C^2 / sqrt 27 (cubic in sinh u).
double oracle_u_closed_form(double rho, const GluedMetric& gm);
/// v = theta sqrt(C/27).
double oracle_v(double theta, const GluedMetric& gm);

struct AlignmentReport {
  double max_distance = 0.0;
  double rms_distance = 0.0;
  std::size_t points = 0;
  std::array<double, 9> rotation{};  // row-major, maps oracle points onto the grid
  std::array<double, 3> translation{};
  double rotation_det = 0.0;
  /// Max |oracle_u - oracle_u_closed_form| over the grid rows.
  double coordinate_chain_error = 0.0;
  double theta_shift = 0.0;
  double threshold = 1e-5;
  bool passed = false;
  std::string to_json(int indent = 2) const;
};

/// Best orthogonal map plus translation (Kabsch, reflections allowed) taking
/// the oracle sampled at (u(rho), v(theta + theta_shift)) onto the grid positions.
/// DomainError unless the grid is an eps=0 grid.
AlignmentReport compare_to_oracle(const ImmersionGrid& grid, const GluedMetric& gm, double theta_shift = 0.0);

/// Numerical first fundamental form of the closed form at `samples` random
/// (u, v) in [-2, 2] x [0, 2pi) against C cosh^6 u (du^2 + dv^2), relative to C cosh^6 u.
ResidualReport verify_oracle_metric(double C, int samples, std::uint64_t seed);

}  // namespace bicons
