#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bicons/errors.hpp"
#include "bicons/geodesic.hpp"

using namespace bicons;

namespace {

GluedMetric make(int eps, double C) {
  ProfileParams p;
  p.eps = SpaceFormSign(eps);
  p.C = C;
  return GluedMetric(GluedProfile(ProfileSolution(p)));
}

}  // namespace

TEST(Geodesic, UnitSpeedStart) {
  const GluedMetric gm = make(1, 3.0);
  const GeodesicState s = unit_speed_state(gm, 0.3, 1.0, 0.7);
  const double G = gm.gamma_jet(0.3).Gamma;
  EXPECT_NEAR(s.drho * s.drho + G * G * s.dtheta * s.dtheta, 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(s.drho, std::cos(0.7));
  GeodesicState bad = s;
  bad.drho *= 2.0;
  EXPECT_THROW(geodesic_integrate(bad, 1.0, gm), DomainError);
}

TEST(Geodesic, MeridiansAreStraight) {
  // theta' = 0 stays 0 and rho advances at unit speed.
  const GluedMetric gm = make(0, 1.0);
  const GeodesicState s = unit_speed_state(gm, -3.0, 0.5, 0.0);
  const auto tr = geodesic_integrate(s, 6.0, gm);
  const GeodesicState e = tr.back();
  EXPECT_NEAR(e.rho, 3.0, 1e-9);
  EXPECT_EQ(e.theta, 0.5);
  EXPECT_NEAR(e.arclength, 6.0, 1e-12);
}

TEST(Geodesic, ConservesSpeedAndClairaut) {
  for (auto [eps, C] : {std::pair{1, 3.0}, std::pair{0, 1.0}, std::pair{-1, 0.0}}) {
    const GluedMetric gm = make(eps, C);
    const auto [a, b] = gm.default_window();
    const GeodesicState s = unit_speed_state(gm, 0.4 * a + 0.6 * b, 0.0, 1.1);
    const auto tr = geodesic_integrate(s, 30.0, gm);
    EXPECT_LE(tr.speed_drift, 1e-8) << eps;
    EXPECT_LE(tr.clairaut_drift, 1e-8) << eps;
    const double G = gm.gamma_jet(s.rho).Gamma;
    EXPECT_NEAR(tr.clairaut, G * G * s.dtheta, 1e-15);
    EXPECT_NEAR(tr.back().arclength, 30.0, 1e-12);
  }
}

TEST(Geodesic, DenseOutputMatchesSamples) {
  const GluedMetric gm = make(1, 3.0);
  const auto tr = geodesic_integrate(unit_speed_state(gm, 0.1, 0.0, 0.9), 10.0, gm);
  ASSERT_GT(tr.samples.size(), 3u);
  const auto& mid = tr.samples[tr.samples.size() / 2];
  const GeodesicState st = tr.at(mid.t);
  EXPECT_NEAR(st.rho, mid.y[0], 1e-14);
  EXPECT_NEAR(st.theta, mid.y[1], 1e-14);
}

TEST(Geodesic, TighterToleranceConverges) {
  const GluedMetric gm = make(1, 3.0);
  const GeodesicState s = unit_speed_state(gm, 0.2, 0.0, 0.6);
  GeodesicOptions loose;
  loose.rel_tol = 1e-9;
  GeodesicOptions tight;
  tight.rel_tol = 1e-12;
  const auto a = geodesic_integrate(s, 20.0, gm, loose).back();
  const auto b = geodesic_integrate(s, 20.0, gm, tight).back();
  EXPECT_NEAR(a.rho, b.rho, 1e-6);
  EXPECT_NEAR(a.theta, b.theta, 1e-6);
}

TEST(Geodesic, JunctionLinesAreGeodesics) {
  const GluedMetric gm1 = make(1, 3.0);
  for (int r : {-2, -1, 1, 2}) EXPECT_LE(junction_line_deviation(gm1, r, 50.0), 1e-8) << r;
  EXPECT_LE(junction_line_deviation(make(0, 1.0), -1, 50.0), 1e-8);
  EXPECT_LE(junction_line_deviation(make(-1, 0.0), -1, 50.0), 1e-8);
}

TEST(Geodesic, ProbeIsDeterministicAndPasses) {
  const GluedMetric gm = make(1, 3.0);
  const auto a = probe_completeness(gm, 4, 20.0, 99);
  const auto b = probe_completeness(gm, 4, 20.0, 99, 2);
  EXPECT_TRUE(a.passed());
  EXPECT_EQ(a.failures, 0);
  EXPECT_EQ(a.count, 4);
  EXPECT_EQ(a.max_speed_drift, b.max_speed_drift);
  EXPECT_EQ(a.max_clairaut_drift, b.max_clairaut_drift);
  const auto c = probe_completeness(gm, 4, 20.0, 100);
  EXPECT_NE(a.max_speed_drift, c.max_speed_drift);
}

TEST(Geodesic, CrossesJunctionsSmoothly) {
  // A steep geodesic crosses several junctions in the periodic case.
  const GluedMetric gm = make(1, 3.0);
  const auto tr = geodesic_integrate(unit_speed_state(gm, 0.0, 0.0, 0.2), 15.0, gm);
  const double W = gm.profile().lattice().block_width();
  EXPECT_GT(std::abs(tr.back().rho), 2.0 * W);
  EXPECT_LE(tr.speed_drift, 1e-8);
}
