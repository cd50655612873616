#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "bicons/errors.hpp"
#include "bicons/geometry.hpp"

using namespace bicons;

namespace {

GluedMetric make(int eps, double C) {
  ProfileParams p;
  p.eps = SpaceFormSign(eps);
  p.C = C;
  return GluedMetric(GluedProfile(ProfileSolution(p)));
}

struct Params {
  int eps;
  double C;
};

std::string name_of(const testing::TestParamInfo<Params>& info) {
  const int eps = info.param.eps;
  std::string s = eps < 0 ? "Hyperbolic" : (eps == 0 ? "Flat" : "Spherical");
  std::string c = std::to_string(static_cast<int>(info.param.C));
  if (info.param.C < 0) c = "Minus" + c.substr(1);
  return s + "C" + c;
}

class IntrinsicIdentities : public testing::TestWithParam<Params> {
 protected:
  GluedMetric gm = make(GetParam().eps, GetParam().C);
  SweepOptions sweep = default_sweep(gm, 400);
};

}  // namespace

TEST_P(IntrinsicIdentities, CurvatureOde) {
  const auto r = verify_curvature_ode(gm, sweep);
  EXPECT_TRUE(r.passed) << r.max_residual;
  EXPECT_LE(r.max_residual, 1e-6);
}

TEST_P(IntrinsicIdentities, LaplaceIdentity) { EXPECT_TRUE(verify_laplace_identity(gm, sweep).passed); }

TEST_P(IntrinsicIdentities, BiconservativePde) { EXPECT_TRUE(verify_bicons_pde(gm, sweep).passed); }

TEST_P(IntrinsicIdentities, CurvatureFromGamma) { EXPECT_TRUE(verify_gamma_curvature(gm, sweep).passed); }

TEST_P(IntrinsicIdentities, ConnectionCoefficient) { EXPECT_TRUE(verify_connection_coefficient(gm, sweep).passed); }

TEST_P(IntrinsicIdentities, FrameRelations) {
  const auto r = verify_frame_relations(gm, sweep);
  EXPECT_TRUE(r.passed) << r.max_residual;
  EXPECT_LE(r.max_residual, 1e-7);
}

TEST_P(IntrinsicIdentities, CompletenessBound) { EXPECT_TRUE(verify_completeness_bound(gm, sweep).passed); }

TEST_P(IntrinsicIdentities, FirstIntegral) {
  const auto r = verify_first_integral(gm, sweep);
  EXPECT_TRUE(r.passed) << r.max_residual;
}

TEST_P(IntrinsicIdentities, IsothermalForm) {
  const auto [a, b] = isothermal_window(gm);
  const auto r = verify_isothermal_form(gm, a, b);
  EXPECT_TRUE(r.passed) << r.max_residual;
}

TEST_P(IntrinsicIdentities, SignedOmegaMatchesLevelCircleCurvature) {
  const auto [a, b] = gm.default_window();
  for (double rho : gm.guarded_grid(a, b, 300)) {
    const CurvatureSample s = curvature_sample(rho, gm);
    EXPECT_NEAR(std::abs(omega(rho, gm)), level_circle_curvature(rho, gm), 1e-12 * std::max(1.0, s.kappa));
    const auto g = gm.gamma_jet(rho);
    EXPECT_NEAR(s.omega, g.dGamma / g.Gamma, 1e-9 * std::max(1.0, std::abs(s.omega)));
  }
}

TEST_P(IntrinsicIdentities, MeanCurvatureSquare) {
  const auto [a, b] = gm.default_window();
  const double e = gm.eps().as_double();
  for (int k = 0; k <= 50; ++k) {
    const double rho = a + (b - a) * k / 50.0;
    const double f = mean_curvature_f(rho, gm);
    EXPECT_GT(f, 0.0);
    EXPECT_NEAR(f * f, (4.0 / 3.0) * (e - gauss_curvature(rho, gm)), 1e-12 * std::max(1.0, f * f));
  }
}

INSTANTIATE_TEST_SUITE_P(ParameterSets, IntrinsicIdentities,
                         testing::Values(Params{1, 3.0}, Params{0, 1.0}, Params{-1, 0.0}, Params{1, 10.0},
                                         Params{0, 4.0}, Params{-1, 2.0}, Params{-1, -1.0}),
                         name_of);

TEST(Geometry, AlphaIsTheDerivedConstant) {
  for (double C : {2.5, 3.0, 7.0}) {
    const GluedMetric gm = make(1, C);
    const auto& r = gm.profile().solution().roots();
    const double rho = gm.profile().solution().rho0(0.3 * r.xi01 + 0.7 * r.xi02);
    EXPECT_NEAR(first_integral_alpha(gm, rho) / expected_alpha(C), 1.0, 1e-8) << C;
  }
  EXPECT_DOUBLE_EQ(expected_alpha(3.0), 64.0 * 3.0 / (3.0 * std::sqrt(3.0)));
}

TEST(Geometry, AlphaUndefinedOnJunction) {
  const GluedMetric gm = make(1, 3.0);
  EXPECT_THROW(first_integral_alpha(gm, gm.profile().lattice().lattice_point(1)), DomainError);
}

TEST(Geometry, GuardedGridAvoidsJunctions) {
  const GluedMetric gm = make(1, 3.0);
  const auto [a, b] = gm.default_window();
  const auto grid = gm.guarded_grid(a, b, 2000);
  EXPECT_GT(grid.size(), 1900u);
  for (double rho : grid)
    for (const auto& [r, J] : gm.profile().lattice().junctions_in(a, b)) EXPECT_GE(std::abs(rho - J), gm.guard_band());
}

TEST(Geometry, MetricComponentsAndGammaJet) {
  const GluedMetric gm = make(0, 1.0);
  const double rho = -2.0;
  const auto c = gm.components(rho);
  EXPECT_EQ(c[0], 1.0);
  EXPECT_EQ(c[1], 0.0);
  const auto g = gm.gamma_jet(rho);
  EXPECT_NEAR(c[2], g.Gamma * g.Gamma, 1e-15);
  const double h = 1e-4;
  EXPECT_NEAR((gm.gamma_jet(rho + h).Gamma - gm.gamma_jet(rho - h).Gamma) / (2 * h), g.dGamma, 1e-8);
  // K = -Gamma''/Gamma.
  EXPECT_NEAR(-g.d2Gamma / g.Gamma, gauss_curvature(rho, gm), 1e-12);
}

TEST(Geometry, CurvatureBoundedByEps) {
  // K = eps - F^{8/3}/9 < eps everywhere.
  for (auto [eps, C] : {std::pair{1, 3.0}, std::pair{0, 1.0}, std::pair{-1, 0.0}}) {
    const GluedMetric gm = make(eps, C);
    const auto [a, b] = gm.default_window();
    for (int k = 0; k <= 100; ++k) EXPECT_LT(gauss_curvature(a + (b - a) * k / 100.0, gm), eps);
  }
}

TEST(Geometry, GradKFormVanishesTowardRoots) {
  const GluedMetric gm = make(1, 3.0);
  const auto& r = gm.profile().solution().roots();
  EXPECT_LT(std::abs(grad_K_xi_form(r.xi01 + 1e-9, gm)), 1e-7);
  EXPECT_LT(std::abs(grad_K_xi_form(r.xi02 - 1e-9, gm)), 1e-6);
  EXPECT_LT(grad_K_xi_form(0.5 * (r.xi01 + r.xi02), gm), 0.0);
  EXPECT_THROW(grad_K_xi_form(r.xi02, gm), DomainError);
}

TEST(Geometry, ReportsRecordConventions) {
  const GluedMetric gm = make(1, 3.0);
  const auto r = verify_laplace_identity(gm, default_sweep(gm, 50));
  EXPECT_GT(r.samples, 40u);
  EXPECT_LE(r.samples, 50u);
  EXPECT_FALSE(r.sign_convention.empty());
  EXPECT_GT(r.guard_band, 0.0);
}
