#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "bicons/gluing.hpp"
#include "bicons/report.hpp"

namespace bicons {

/// Sign convention used for the Laplace-Beltrami operator in every identity check.
inline constexpr const char* kLaplacianConvention =
    "Delta = -div grad (non-negative spectrum); on dr^2 + Gamma^2 dtheta^2, Delta K = -(K'' + (Gamma'/Gamma) K')";

/// The complete metric dρ² + Γ(ρ)² dθ² built from a glued profile.
class GluedMetric {
 public:
  explicit GluedMetric(GluedProfile gp);

  const GluedProfile& profile() const { return gp_; }
  SpaceFormSign eps() const { return gp_.eps(); }
  double C() const { return gp_.solution().C(); }

  struct GammaJet {
    double Gamma;
    double dGamma;
    double d2Gamma;
  };
  GammaJet gamma_jet(double rho) const;
  /// (g_rr, g_rtheta, g_thetatheta).
  std::array<double, 3> components(double rho) const;

  /// Half-width of the band around each junction excluded from identity grids.
  double guard_band() const { return 1e-4 * gp_.block_scale(); }
  std::pair<double, double> default_window() const { return bicons::default_window(gp_); }
  /// n equally spaced points of [a, b] with the junction guard bands removed.
  std::vector<double> guarded_grid(double a, double b, int n) const;

 private:
  GluedProfile gp_;
};

/// K, its rho-derivatives and the connection coefficient at one point.
/// omega is signed with respect to X1 = d/drho (omega = Gamma'/Gamma);
/// kappa = |omega| is the level-circle curvature.
struct CurvatureSample {
  double rho = 0.0;
  double K = 0.0;
  double dK_drho = 0.0;
  double d2K_drho2 = 0.0;
  double omega = 0.0;
  double kappa = 0.0;
};

CurvatureSample curvature_sample(double rho, const GluedMetric& gm);
/// K = eps - F^{8/3}/9.
double gauss_curvature(double rho, const GluedMetric& gm);
/// d/dxi-coefficient of grad K in (xi, theta) coordinates: xi^2 T(xi)/3 * K'(xi).
double grad_K_xi_form(double xi, const GluedMetric& gm);
/// 3 K' / (8 (eps - K)), zero on junctions.
double omega(double rho, const GluedMetric& gm);
/// 3 |grad K| / (8 (eps - K)).
double level_circle_curvature(double rho, const GluedMetric& gm);
/// Mean curvature f = 2 F^{4/3} / (3 sqrt 3), from f^2 = (4/3)(eps - K).
double mean_curvature_f(double rho, const GluedMetric& gm);

struct SweepOptions {
  double a = 0.0;
  double b = 0.0;
  int n = 1000;
  int workers = 1;
};
/// Default sweep over the metric's default window.
SweepOptions default_sweep(const GluedMetric& gm, int n = 1000, int workers = 1);

ResidualReport verify_curvature_ode(const GluedMetric& gm, const SweepOptions& opt);
ResidualReport verify_laplace_identity(const GluedMetric& gm, const SweepOptions& opt);
ResidualReport verify_bicons_pde(const GluedMetric& gm, const SweepOptions& opt);
/// K = -Gamma''/Gamma.
ResidualReport verify_gamma_curvature(const GluedMetric& gm, const SweepOptions& opt);
/// |omega| = kappa and omega = Gamma'/Gamma.
ResidualReport verify_connection_coefficient(const GluedMetric& gm, const SweepOptions& opt);
/// Frame relations of X1 = d/drho, X2 = (1/Gamma) d/dtheta against Christoffel
/// symbols obtained by finite differences of the metric components.
ResidualReport verify_frame_relations(const GluedMetric& gm, const SweepOptions& opt);
/// g - m0 (dtheta^2 + drho^2) >= 0 with m0 = min(1/xi02^2, 1).
ResidualReport verify_completeness_bound(const GluedMetric& gm, const SweepOptions& opt);

/// Solves the first-integral relation for alpha at rho; DomainError at junctions.
double first_integral_alpha(const GluedMetric& gm, double rho);
/// 64 C / (3 sqrt 3).
double expected_alpha(double C);
/// Residual |alpha(rho) - 64C/(3 sqrt 3)| / max(1, |64C/(3 sqrt 3)|); the
/// relative spread of alpha is reported as an extra.
ResidualReport verify_first_integral(const GluedMetric& gm, const SweepOptions& opt);

/// Default window for the isothermal check: the base block trimmed by 5% of
/// its width at each end (eps=+1), or (rho_{0,-1}, rho_{0,-1} + 2 scale) trimmed likewise.
std::pair<double, double> isothermal_window(const GluedMetric& gm);
/// Pulls one block back to sigma = log(3^{3/4}/xi), u reconstructed by
/// quadrature of du/dsigma with a = C sqrt 3, and checks
/// sigma'' = e^{-2 sigma/3} - eps e^{2 sigma} analytically and by finite differences.
ResidualReport verify_isothermal_form(const GluedMetric& gm, double a, double b, int n = 801);

}  // namespace bicons
