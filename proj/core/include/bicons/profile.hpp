#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bicons/space_form.hpp"

namespace bicons {

/// (eps, C) selects one abstract standard biconservative surface; xi00 is the
/// quadrature base point where rho0 vanishes. When unset a default is chosen
/// (geometric midpoint of the roots for eps=+1, xi02/2 otherwise).
struct ProfileParams {
  SpaceFormSign eps = SpaceFormSign::spherical();
  double C = 3.0;
  std::optional<double> xi00;
};

/// Throws InadmissibleParameters when no block exists for (eps, C).
void check_admissible(SpaceFormSign eps, double C);

/// T(xi) = -xi^{8/3} + C xi^2 - 3 eps; DomainError for xi < 0.
double potential_T(double xi, SpaceFormSign eps, double C);
double potential_dT(double xi, double C);
double potential_d2T(double xi, double C);
double potential_d3T(double xi);

struct RootPair {
  double xi01 = 0.0;
  double xi02 = 0.0;
  std::optional<double> xi_star;  // (3C/4)^{3/2}, absent when C <= 0
};

RootPair find_roots(SpaceFormSign eps, double C);

enum class RootSide { Lower, Upper };

/// Coordinate chart used to represent a point of the block.
///  Upper:  xi = xi02 - t^2, coord = t
///  Lower:  xi = xi01 + t^2, coord = t   (eps=+1 only)
///  Middle: xi = exp(s),     coord = s   (tabulated)
///  Tail:   xi = exp(s),     coord = s   (below the table, eps in {-1,0})
enum class Chart { Lower, Middle, Upper, Tail };

/// A point of the block carried together with its chart coordinate, so that
/// T stays accurate next to the roots where T(xi) itself cancels.
struct ProfilePoint {
  double xi = 0.0;
  double T = 0.0;
  Chart chart = Chart::Middle;
  double coord = 0.0;
};

struct ProfileTableRow {
  double xi;
  double rho;
  double drho_dxi;
};

class ProfileSolution {
 public:
  explicit ProfileSolution(const ProfileParams& params);

  SpaceFormSign eps() const { return eps_; }
  double C() const { return C_; }
  double xi00() const { return xi00_; }
  const RootPair& roots() const { return roots_; }
  double rho_minus() const { return rho_minus_; }
  ExtendedReal rho_plus() const;

  /// Width of the root windows handled by the t = sqrt|xi - root| substitution.
  double root_window() const { return window_; }

  /// rho0(xi) = -int_{xi00}^{xi} sqrt(3/(tau^2 T(tau))) dtau, for xi in (xi01, xi02).
  double rho0(double xi) const;
  /// Analytic slope drho0/dxi = -sqrt(3/(xi^2 T(xi))).
  double drho0_dxi(double xi) const;

  /// xi0(rho), the inverse of rho0, for rho in (rho_minus, rho_plus).
  double invert(double rho) const;
  ProfilePoint locate(double rho) const;
  /// Point at rho-distance `distance` >= 0 from the root on `side` (rho_minus
  /// for Upper, rho_plus for Lower). Exact to rounding in the distance.
  ProfilePoint locate_from_end(RootSide side, double distance) const;
  /// rho0 at a located point, evaluated in its own chart.
  double rho_at(const ProfilePoint& p) const;
  /// Distance in rho from the root on `side` at a located point.
  double distance_from_end(RootSide side, const ProfilePoint& p) const;

  /// lim sqrt|xi - root| / sqrt(T(xi)) = sqrt(3/|8 root^{5/3} - 6 C root|).
  /// NotApplicable for the lower root when eps is not +1.
  double endpoint_coefficient(RootSide side) const;

  /// int_a^b dtau / sqrt(T(tau)) for xi01 <= a <= b <= xi02, with both root
  /// singularities removed by substitution. For eps in {-1,0}, a must be > 0.
  double inverse_sqrt_T_integral(double a, double b) const;

  /// Table nodes (xi, rho, drho/dxi) in increasing xi, roots excluded.
  std::vector<ProfileTableRow> table() const;
  std::string table_csv() const;

 private:
  struct ChartTable {
    std::vector<double> c;   // chart coordinate, increasing
    std::vector<double> v;   // chart value at c
    std::vector<double> dv;  // dv/dc
  };

  double chart_integrand(Chart chart, double c) const;
  double chart_value(const ChartTable& tab, Chart chart, double c) const;
  double chart_solve(const ChartTable& tab, Chart chart, double target) const;
  const ChartTable& table_of(Chart chart) const;
  ProfilePoint point_in_chart(Chart chart, double c) const;
  double tail_rho(double s) const;
  double tail_solve(double rho) const;
  double q_lower(double s) const;
  double q_upper(double s) const;
  void build_table(ChartTable& tab, Chart chart, double c0, double c1, double base_value, double target_gap);

  SpaceFormSign eps_;
  double C_;
  RootPair roots_;
  double xi00_ = 0.0;
  double window_ = 0.0;
  double rho_minus_ = 0.0;
  double rho_plus_ = 0.0;  // meaningful for eps=+1 only
  double s_top_ = 0.0;
  double r01_83_ = 0.0;  // xi01^{8/3}
  double r02_83_ = 0.0;  // xi02^{8/3}
  double s_bot_ = 0.0;
  ChartTable upper_, lower_, middle_;
};

/// Free-function forms of the profile operations.
double rho0(double xi, const ProfileSolution& sol);
double invert_rho0(double rho, const ProfileSolution& sol);
struct Rho0Limits {
  double rho_minus;
  ExtendedReal rho_plus;
};
Rho0Limits rho0_limits(const ProfileSolution& sol);
double endpoint_singularity_coeff(const ProfileSolution& sol, RootSide side);

}  // namespace bicons
