#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bicons/errors.hpp"
#include "bicons/profile.hpp"
#include "hp_oracle.hpp"

using namespace bicons;

namespace {

ProfileSolution make(int eps, double C) {
  ProfileParams p;
  p.eps = SpaceFormSign(eps);
  p.C = C;
  return ProfileSolution(p);
}

}  // namespace

TEST(SpaceFormSign, RejectsOtherValues) {
  EXPECT_THROW(SpaceFormSign(2), DomainError);
  EXPECT_EQ(SpaceFormSign(-1).ambient_name(), SpaceFormSign::hyperbolic().ambient_name());
}

TEST(Potential, ValuesAndDomain) {
  EXPECT_DOUBLE_EQ(potential_T(1.0, SpaceFormSign(1), 3.0), -1.0 + 3.0 - 3.0);
  EXPECT_THROW(potential_T(-1.0, SpaceFormSign(1), 3.0), DomainError);
  // dT = -(8/3) xi^{5/3} + 2 C xi at xi = 8.
  EXPECT_NEAR(potential_dT(8.0, 1.0), -(8.0 / 3.0) * 32.0 + 16.0, 1e-12);
}

TEST(Admissibility, Boundaries) {
  EXPECT_THROW(check_admissible(SpaceFormSign(1), 4.0 / std::sqrt(3.0)), InadmissibleParameters);
  EXPECT_THROW(check_admissible(SpaceFormSign(0), 0.0), InadmissibleParameters);
  EXPECT_THROW(check_admissible(SpaceFormSign(0), -1.0), InadmissibleParameters);
  EXPECT_NO_THROW(check_admissible(SpaceFormSign(-1), -5.0));
  EXPECT_NO_THROW(check_admissible(SpaceFormSign(1), 2.31));
}

// Reference values: tests/oracles/profile_values.py (mpmath, 40 digits).
TEST(Roots, FrozenSpherical) {
  const RootPair r = find_roots(SpaceFormSign(1), 3.0);
  EXPECT_NEAR(r.xi01, 1.2844545283264539655, 1e-14);
  EXPECT_NEAR(r.xi02, 4.8711581792847966309, 1e-14);
  ASSERT_TRUE(r.xi_star.has_value());
  EXPECT_DOUBLE_EQ(*r.xi_star, 3.375);
}

TEST(Roots, FlatAndHyperbolicClosedForms) {
  for (double C : {1.0, 4.0, 9.0}) {
    const RootPair r = find_roots(SpaceFormSign(0), C);
    EXPECT_EQ(r.xi01, 0.0);
    EXPECT_NEAR(r.xi02 / std::pow(C, 1.5), 1.0, 1e-12) << C;
  }
  EXPECT_NEAR(find_roots(SpaceFormSign(-1), 0.0).xi02, std::pow(3.0, 0.375), 1e-15);
  EXPECT_NEAR(find_roots(SpaceFormSign(-1), 2.0).xi02, 3.3973469510176934413, 1e-13);
  EXPECT_NEAR(find_roots(SpaceFormSign(-1), -1.0).xi02, 1.1889351587441322109, 1e-14);
  EXPECT_FALSE(find_roots(SpaceFormSign(-1), -1.0).xi_star.has_value());
}

TEST(Roots, AgreeWithMultiprecision) {
  for (double C : {2.5, 3.0, 5.0, 12.0}) {
    const auto ref = hp::roots(C, 1);
    const RootPair r = find_roots(SpaceFormSign(1), C);
    EXPECT_NEAR(r.xi01, ref.xi01.convert_to<double>(), 4e-15 * r.xi01) << C;
    EXPECT_NEAR(r.xi02, ref.xi02.convert_to<double>(), 4e-15 * r.xi02) << C;
  }
}

TEST(Profile, FrozenSphericalC3) {
  const ProfileSolution s = make(1, 3.0);
  EXPECT_NEAR(s.xi00(), 2.5013558686394068822, 1e-14);
  EXPECT_NEAR(s.rho_plus().value(), 1.2288405962351168911, 1e-12);
  EXPECT_NEAR(s.rho_minus(), -0.6265596340323473736, 1e-12);
  const double r1 = 1.2844545283264539655;
  const double r2 = 4.8711581792847966309;
  const std::pair<double, double> rows[] = {{0.05, 0.65893529044323100841},
                                            {0.25, 0.12261289117679413026},
                                            {0.5, -0.16312795106264321304},
                                            {0.75, -0.35444368090929238132},
                                            {0.95, -0.51802999929496995519}};
  for (const auto& [frac, rho] : rows) EXPECT_NEAR(s.rho0(r1 + frac * (r2 - r1)), rho, 1e-12) << frac;
  EXPECT_NEAR(s.endpoint_coefficient(RootSide::Upper), 0.3513642612119501478, 1e-13);
  EXPECT_NEAR(s.endpoint_coefficient(RootSide::Lower), 0.52275009885333844781, 1e-13);
}

TEST(Profile, FrozenRhoMinusOpenCases) {
  const std::tuple<int, double, double> rows[] = {{-1, 0.0, -1.1815638028289028351},
                                                  {0, 1.0, -4.7622031559045984243},
                                                  {0, 4.0, -0.29763769724403740152},
                                                  {0, 9.0, -0.058792631554377758324},
                                                  {-1, 2.0, -0.75494989388888310387},
                                                  {-1, -1.0, -1.2395736513142617633}};
  for (const auto& [eps, C, rm] : rows) {
    const ProfileSolution s = make(eps, C);
    EXPECT_NEAR(s.rho_minus(), rm, 1e-12 * std::max(1.0, std::abs(rm))) << eps << " " << C;
    EXPECT_TRUE(s.rho_plus().is_infinite());
    EXPECT_THROW((void)s.endpoint_coefficient(RootSide::Lower), NotApplicable);
  }
}

TEST(Profile, IndependentTanhSinhQuadrature) {
  for (double C : {2.5, 3.0, 6.0}) {
    const ProfileSolution s = make(1, C);
    const auto rr = hp::roots(C, 1);
    const double r1 = rr.xi01.convert_to<double>();
    const double r2 = rr.xi02.convert_to<double>();
    EXPECT_NEAR(s.rho_plus().value(), hp::profile_integral_from_root(C, r1, s.xi00()), 1e-11) << C;
    EXPECT_NEAR(s.rho_minus(), hp::profile_integral_from_root(C, r2, s.xi00()), 1e-11) << C;
  }
  for (double C : {1.0, 4.0}) {
    const ProfileSolution s = make(0, C);
    EXPECT_NEAR(s.rho_minus(), hp::profile_integral_from_root(C, std::pow(C, 1.5), s.xi00()), 1e-11) << C;
  }
}

TEST(Profile, MultiprecisionQuadratureC3) {
  const ProfileSolution s = make(1, 3.0);
  const auto rr = hp::roots(3.0, 1);
  const hp::Real x00(s.xi00());
  EXPECT_NEAR(s.rho_plus().value(), hp::profile_integral(3.0, 1, rr.xi01, x00).convert_to<double>(), 1e-13);
  EXPECT_NEAR(s.rho_minus(), -hp::profile_integral(3.0, 1, x00, rr.xi02).convert_to<double>(), 1e-13);
}

TEST(Profile, InverseRoundTrip) {
  for (auto [eps, C] : {std::pair{1, 3.0}, std::pair{0, 1.0}, std::pair{-1, 0.0}, std::pair{-1, 2.0}}) {
    const ProfileSolution s = make(eps, C);
    const double hi = eps == 1 ? s.rho_plus().value() : s.rho_minus() + 20.0;
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int k = 0; k < 300; ++k) {
      const double rho = s.rho_minus() + (hi - s.rho_minus()) * (0.001 + 0.998 * U(gen));
      const double xi = s.invert(rho);
      EXPECT_NEAR(s.rho0(xi), rho, 1e-10 * std::max(1.0, std::abs(rho))) << eps << " " << C;
    }
  }
}

TEST(Profile, MonotoneDecreasingWithAnalyticSlope) {
  const ProfileSolution s = make(1, 3.0);
  const auto& r = s.roots();
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    const double xi = r.xi01 + (r.xi02 - r.xi01) * k / 200.0;
    const double v = s.rho0(xi);
    EXPECT_LT(v, prev);
    prev = v;
    const double h = 1e-5;
    const double fd = (s.rho0(xi + h) - s.rho0(xi - h)) / (2 * h);
    EXPECT_NEAR(fd, s.drho0_dxi(xi), 1e-7 * std::abs(s.drho0_dxi(xi)));
  }
  EXPECT_NEAR(s.rho0(s.xi00()), 0.0, 1e-15);
}

TEST(Profile, EndpointCoefficientSampling) {
  const ProfileSolution s = make(1, 3.0);
  const double r2 = s.roots().xi02;
  const double expected = std::sqrt(3.0 / (8.0 * std::pow(r2, 5.0 / 3.0) - 6.0 * 3.0 * r2));
  EXPECT_NEAR(s.endpoint_coefficient(RootSide::Upper), expected, 1e-14);
  // sqrt(xi02 - xi)/sqrt(T) approaches the coefficient linearly in the offset.
  for (double d : {1e-4, 1e-5, 1e-6}) {
    const double xi = r2 - d;
    const double ratio = std::sqrt(d) / std::sqrt(potential_T(xi, SpaceFormSign(1), 3.0));
    EXPECT_NEAR(ratio, expected, 1e-4);
  }
}

TEST(Profile, EndLocatorIsExact) {
  const ProfileSolution s = make(1, 3.0);
  for (double d : {1e-12, 1e-8, 1e-4, 0.1}) {
    for (RootSide side : {RootSide::Upper, RootSide::Lower}) {
      const ProfilePoint p = s.locate_from_end(side, d);
      EXPECT_NEAR(s.distance_from_end(side, p), d, 1e-15 + 1e-13 * d);
      EXPECT_GT(p.T, 0.0);
    }
  }
}

TEST(Profile, InverseSqrtTIntegralAgainstMultiprecision) {
  const ProfileSolution s = make(1, 3.0);
  const auto rr = hp::roots(3.0, 1);
  boost::math::quadrature::tanh_sinh<hp::Real> ts(15);
  auto g = [](const hp::Real& x) -> hp::Real {
    const hp::Real t = hp::T(x, hp::Real(3), 1);
    return t > 0 ? 1 / boost::multiprecision::sqrt(t) : hp::Real(0);
  };
  const double ref = ts.integrate(g, rr.xi01, rr.xi02, hp::Real("1e-30")).convert_to<double>();
  EXPECT_NEAR(s.inverse_sqrt_T_integral(s.roots().xi01, s.roots().xi02), ref, 1e-11);
}

TEST(Profile, TableIsMonotone) {
  const ProfileSolution s = make(0, 1.0);
  const auto t = s.table();
  ASSERT_GT(t.size(), 10u);
  for (std::size_t i = 1; i < t.size(); ++i) {
    EXPECT_GT(t[i].xi, t[i - 1].xi);
    EXPECT_LT(t[i].rho, t[i - 1].rho);
  }
  EXPECT_NE(s.table_csv().find("xi,rho"), std::string::npos);
}
