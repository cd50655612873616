#include <gtest/gtest.h>

#include <cmath>

#include "bicons/errors.hpp"
#include "bicons/oracle.hpp"

using namespace bicons;

namespace {

GluedMetric make(int eps, double C) {
  ProfileParams p;
  p.eps = SpaceFormSign(eps);
  p.C = C;
  return GluedMetric(GluedProfile(ProfileSolution(p)));
}

}  // namespace

TEST(Oracle, ClosedFormBasics) {
  EXPECT_DOUBLE_EQ(oracle_constant(3.0), 27.0 / 81.0);
  EXPECT_THROW(explicit_immersion_eps0(0.0, 0.0, 0.0), DomainError);
  const auto p = explicit_immersion_eps0(0.0, 0.0, 9.0);
  EXPECT_NEAR(p[0], 1.0, 1e-15);
  EXPECT_EQ(p[1], 0.0);
  EXPECT_EQ(p[2], 0.0);
}

TEST(Oracle, FirstFundamentalForm) {
  for (double C : {0.5, 1.0, 27.0}) {
    const auto r = verify_oracle_metric(C, 200, 5);
    EXPECT_TRUE(r.passed) << C << " " << r.max_residual;
  }
}

TEST(Oracle, CoordinateChainsAgree) {
  for (double C : {1.0, 4.0, 9.0}) {
    const GluedMetric gm = make(0, C);
    const double rm = gm.profile().lattice().rho_minus();
    EXPECT_NEAR(oracle_u(rm, gm), 0.0, 1e-14);
    const double s = gm.profile().block_scale();
    for (int k = -20; k <= 20; ++k) {
      if (k == 0) continue;
      const double rho = rm + 0.1 * k * s;
      const double u = oracle_u(rho, gm);
      EXPECT_EQ(u > 0.0, k > 0);
      EXPECT_NEAR(u, oracle_u_closed_form(rho, gm), 1e-10 * std::max(1.0, std::abs(u))) << C << " " << k;
    }
    EXPECT_NEAR(oracle_v(1.0, gm), std::sqrt(C / 27.0), 1e-15);
  }
  EXPECT_THROW(oracle_u(0.0, make(1, 3.0)), DomainError);
}

TEST(Oracle, IntegratedSurfaceAligns) {
  for (double C : {1.0, 4.0}) {
    const GluedMetric gm = make(0, C);
    const ImmersionGrid g = integrate_immersion(gm, AmbientModel{SpaceFormSign(0)}, default_grid_spec(gm, 61, 24));
    const AlignmentReport a = compare_to_oracle(g, gm);
    EXPECT_TRUE(a.passed) << a.max_distance;
    EXPECT_LE(a.max_distance, 1e-8);
    EXPECT_NEAR(std::abs(a.rotation_det), 1.0, 1e-12);
    EXPECT_EQ(a.points, 61u * 24u);
    EXPECT_LE(a.coordinate_chain_error, 1e-10);
  }
}

TEST(Oracle, ThetaShiftIsAbsorbedByTheRotation) {
  const GluedMetric gm = make(0, 1.0);
  const ImmersionGrid g = integrate_immersion(gm, AmbientModel{SpaceFormSign(0)}, default_grid_spec(gm, 41, 16));
  const double base = compare_to_oracle(g, gm).max_distance;
  for (double shift : {0.3, 1.7, -2.0}) {
    const AlignmentReport a = compare_to_oracle(g, gm, shift);
    EXPECT_TRUE(a.passed);
    EXPECT_NEAR(a.max_distance, base, 1e-8);
    EXPECT_EQ(a.theta_shift, shift);
  }
}

TEST(Oracle, RejectsCurvedGrids) {
  const GluedMetric gm = make(1, 3.0);
  const ImmersionGrid g = integrate_immersion(gm, AmbientModel{SpaceFormSign(1)}, default_grid_spec(gm, 11, 8));
  EXPECT_THROW(compare_to_oracle(g, gm), DomainError);
}

TEST(Oracle, ReportSerializes) {
  const GluedMetric gm = make(0, 1.0);
  const ImmersionGrid g = integrate_immersion(gm, AmbientModel{SpaceFormSign(0)}, default_grid_spec(gm, 11, 8));
  const std::string js = compare_to_oracle(g, gm).to_json();
  EXPECT_NE(js.find("\"max_distance\""), std::string::npos);
  EXPECT_NE(js.find("\"rotation\""), std::string::npos);
}
