#pragma once

#include <numbers>
#include <vector>

#include "bicons/ambient.hpp"
#include "bicons/geometry.hpp"
#include "bicons/report.hpp"

namespace bicons {

/// Normal convention shared by every extrinsic report.
inline constexpr const char* kNormalConvention = "N chosen so that trace A = f > 0 (N = H/|H|)";

/// Principal curvatures in the frame (X1, X2); f is the trace.
struct ShapeOperatorSample {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double f = 0.0;
  double det() const { return lambda1 * lambda2; }
};

/// lambda1 = -sqrt(eps-K)/sqrt3, lambda2 = sqrt(3(eps-K)), f = (2/sqrt3) sqrt(eps-K).
ShapeOperatorSample shape_operator(double rho, const GluedMetric& gm);

/// det A - (K - eps), trace A - f and lambda2 - lambda1 - (4/sqrt3) sqrt(eps-K);
/// the minimum umbilicity gap lambda2 - lambda1 is reported as an extra.
ResidualReport verify_shape_operator(const GluedMetric& gm, const SweepOptions& opt);
/// |A(grad f) + (f/2) grad f| / max(1, |grad f|); the finite-difference check of
/// f f' = -(2/3) K' is reported as an extra and asserted at 1e-7.
ResidualReport verify_biconservative_tangency(const GluedMetric& gm, const SweepOptions& opt);
/// Codazzi (nabla_X1 A) X2 = (nabla_X2 A) X1. The residual is the scalar form
/// lambda2' = omega (lambda1 - lambda2); the frame form, with connection
/// coefficients and lambda2' taken from finite differences of the metric, is
/// reported as extras together with the agreement of the two forms.
ResidualReport verify_codazzi(const GluedMetric& gm, const SweepOptions& opt);

struct JunctionMeanCurvature {
  int r = 0;
  double rho = 0.0;
  double f2 = 0.0;
  /// f^2 != 0 and |f^2 - 4/3| > 1e-6.
  bool admissible = false;
};
/// f^2 on the junction lines rho_{0,-1} and (eps=+1) rho_{0,1}.
std::vector<JunctionMeanCurvature> junction_mean_curvature(const GluedMetric& gm);

enum class FrameDirection { Rho, Theta };

/// Quantities the frame equations need at one rho; constant along theta-fibers.
struct FrameCoefficients {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double Gamma = 0.0;
  double omega = 0.0;  // Gamma'/Gamma
};
FrameCoefficients frame_coefficients(double rho, const GluedMetric& gm);

/// Derivative of (Phi, E1, E2, N) along d/drho or d/dtheta:
///   rho:   Phi' = E1, E1' = lambda1 N - eps Phi, E2' = 0, N' = -lambda1 E1;
///   theta: Phi' = Gamma E2, E1' = Gamma omega E2,
///          E2' = Gamma (-omega E1 + lambda2 N - eps Phi), N' = -Gamma lambda2 E2.
FrameState frame_ode_rhs(const FrameState& s, FrameDirection dir, const FrameCoefficients& c,
                         const AmbientModel& model);
FrameState frame_ode_rhs(const FrameState& s, FrameDirection dir, double rho, const GluedMetric& gm,
                         const AmbientModel& model);

struct ImmersionGridSpec {
  double rho_min = 0.0;
  double rho_max = 1.0;
  int n_rho = 101;
  double theta_min = 0.0;
  double theta_max = 2.0 * std::numbers::pi;
  int n_theta = 64;
  /// Largest RK4 step along rho; 0 selects 2.5e-3 * block scale.
  double rho_step = 0.0;
  /// Largest Gamma * (|omega| + |lambda2| + 1) * dtheta per RK4 step along theta.
  double theta_rate_step = 5e-3;
  /// Frame correction cadence in RK4 steps.
  int correct_every = 16;
  /// Integrate the theta line through the base node first and then the rho lines from it.
  bool theta_spine_first = false;
  int workers = 1;
};

/// Two periods in rho for eps=+1 ([rho_{0,-1} - W, rho_{0,-1} + 3W]), the default
/// window otherwise; full circle in theta.
ImmersionGridSpec default_grid_spec(const GluedMetric& gm, int n_rho = 201, int n_theta = 64);

struct ImmersionGrid {
  SpaceFormSign eps = SpaceFormSign::flat();
  ImmersionGridSpec spec;
  std::vector<double> rho;
  std::vector<double> theta;
  std::vector<FrameState> frames;  // row-major: i_rho * n_theta + i_theta
  std::vector<double> drift;       // worst pre-correction Gram drift on the path to the node
  double max_drift = 0.0;

  const FrameState& at(int i, int j) const { return frames[static_cast<std::size_t>(i) * theta.size() + j]; }
  double drift_at(int i, int j) const { return drift[static_cast<std::size_t>(i) * theta.size() + j]; }
  int n_rho() const { return static_cast<int>(rho.size()); }
  int n_theta() const { return static_cast<int>(theta.size()); }
};

/// RK4 integration of the frame equations from the canonical initial frame at
/// the base node (middle rho node, middle theta node), with correction every
/// `correct_every` steps.
/// NumericalFailure when the pre-correction drift exceeds 1e-5.
ImmersionGrid integrate_immersion(const GluedMetric& gm, const AmbientModel& model, const ImmersionGridSpec& spec);

/// Gram matrix of (E1, E2, N), plus the ambient constraint, at every node (threshold 1e-7).
/// Finite-difference agreement of Phi_rho with E1 and Phi_theta with Gamma E2 is an extra.
ResidualReport verify_induced_metric(const ImmersionGrid& grid, const GluedMetric& gm);
/// |<Phi,Phi> - constraint| at every node (threshold 1e-8).
ResidualReport verify_ambient_constraint(const ImmersionGrid& grid);
/// Mean curvature from the integrated frame: <dE1/drho, N> + <dE2/dtheta, N>/Gamma by
/// 11-point differences over grid nodes, against 2F^{4/3}/(3 sqrt3) (threshold 1e-7).
ResidualReport verify_extrinsic_mean_curvature(const ImmersionGrid& grid, const GluedMetric& gm);
/// Gauss equation eps + det(second fundamental form) = K from the same differences (threshold 1e-6).
ResidualReport verify_gauss_equation(const ImmersionGrid& grid, const GluedMetric& gm);
/// Max |Phi_a - Phi_b| over shared nodes of two grids on the same spec.
double max_position_difference(const ImmersionGrid& a, const ImmersionGrid& b);

}  // namespace bicons
