#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "bicons/profile.hpp"

namespace bicons {

/// Junction lattice rho_{0,r}. For eps=+1 the blocks have width
/// W = rho_{0,1} - rho_{0,-1} and F has period 2W; for eps in {-1,0} there is
/// the single junction rho_{0,-1}.
class GluingLattice {
 public:
  GluingLattice(double rho_minus, ExtendedReal rho_plus);

  bool periodic() const { return rho_plus_.is_finite(); }
  double rho_minus() const { return rho_minus_; }
  ExtendedReal rho_plus() const { return rho_plus_; }
  /// Block width W; NotApplicable when not periodic.
  double block_width() const;
  double period() const { return 2.0 * block_width(); }

  /// r rho_{0,1} - (r-1) rho_{0,-1} for r >= 1, (r+1) rho_{0,1} - r rho_{0,-1}
  /// for r <= -1. DomainError for r = 0; NotApplicable for r != -1 when not periodic.
  double lattice_point(int r) const;
  /// Index of the block whose left end is rho_{0,r}: r for r >= 1, r+1 for r <= -1.
  static long long block_of_index(int r) { return r >= 1 ? r : r + 1; }
  /// (r, rho_{0,r}) for all junctions in [a, b], increasing.
  std::vector<std::pair<int, double>> junctions_in(double a, double b) const;

 private:
  double rho_minus_;
  ExtendedReal rho_plus_;
};

double lattice_point(int r, const GluingLattice& lat);

/// rho = rho_{0,-1} + k W + x with 0 <= x < W (eps=+1); for eps in {-1,0},
/// k = 0 and x = rho - rho_{0,-1} on the right of the junction, k = -1 and
/// x = rho_{0,-1} - rho on the left.
struct BlockCoordinate {
  long long k = 0;
  double x = 0.0;
};

/// F and its rho-derivatives up to order 4 together with T(F).
struct ProfileJet {
  double F = 0.0;
  double dF = 0.0;
  double d2F = 0.0;
  double d3F = 0.0;
  double d4F = 0.0;
  double T = 0.0;
  long long block = 0;
};

class GluedProfile {
 public:
  explicit GluedProfile(ProfileSolution sol);

  const ProfileSolution& solution() const { return sol_; }
  const GluingLattice& lattice() const { return lat_; }
  SpaceFormSign eps() const { return sol_.eps(); }

  BlockCoordinate reduce(double rho) const;
  /// Inverse of reduce: rho_{0,-1} + k W + x (periodic) or the mirror for eps in {-1,0}.
  double expand(const BlockCoordinate& b) const;
  /// Scale used for guard bands and step sweeps: W, or |rho_{0,-1}| for eps in {-1,0}.
  double block_scale() const;

  ProfilePoint point(double rho) const;
  /// Sign s with F' = s F sqrt(T/3): -1 on even blocks, +1 on odd ones.
  static int parity_sign(long long block) { return (block % 2 == 0) ? -1 : 1; }

  double F(double rho) const { return point(rho).xi; }
  /// F(rho_{0,r} + offset) - F(rho_{0,r}) with the offset taken exactly in
  /// block-local arithmetic and no cancellation against the root value.
  double junction_offset(int r, double offset) const;
  double Gamma(double rho) const { return 1.0 / F(rho); }
  ProfileJet jet(double rho) const;
  /// Order 1..3; DomainError otherwise.
  double derivative_F(double rho, int order) const;

  /// rho_r(xi): translate of rho0 for even r, reflection for odd r.
  double reflect_rho_r(double xi, int r) const;
  /// Exact F at the junction rho_{0,r} from the parity of its block.
  double junction_value(int r) const;

  /// CSV columns rho,F over n equally spaced points of [a, b].
  std::string csv(double a, double b, int n) const;

 private:
  ProfileSolution sol_;
  GluingLattice lat_;
};

double eval_F(double rho, const GluedProfile& gp);
double eval_Gamma(double rho, const GluedProfile& gp);
double derivative_F(double rho, int order, const GluedProfile& gp);

struct JunctionAudit {
  int r = 0;
  double rho = 0.0;
  // Index 0..3 holds derivative orders 1..4.
  std::array<double, 4> left{};
  std::array<double, 4> right{};
  std::array<double, 4> analytic{};
  std::array<double, 4> mismatch{};
  std::array<double, 4> analytic_error{};
};

struct JunctionSmoothnessReport {
  std::vector<JunctionAudit> junctions;
  std::array<double, 4> max_mismatch{};
  std::array<double, 4> max_analytic_error{};
  /// Thresholds for orders 1..3; order 4 is reported but not asserted.
  std::array<double, 3> thresholds{1e-7, 1e-6, 1e-4};
  bool passed = true;
};

/// One-sided finite-difference audit of F', F'', F''' (and F'''' for
/// information) at every junction in [a, b], with a step sweep
/// h in {1e-2, ..., 1e-5} * block_scale and Richardson extrapolation.
JunctionSmoothnessReport junction_smoothness_report(const GluedProfile& gp, double a, double b);
/// Default window: [rho_{0,-2}, rho_{0,2}] for eps=+1, rho_{0,-1} +- 2 scale otherwise.
std::pair<double, double> default_window(const GluedProfile& gp);
JunctionSmoothnessReport junction_smoothness_report(const GluedProfile& gp);

}  // namespace bicons
