#include "bicons/gluing.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "bicons/errors.hpp"
#include "bicons/numerics/finite_difference.hpp"

namespace bicons {

GluingLattice::GluingLattice(double rho_minus, ExtendedReal rho_plus) : rho_minus_(rho_minus), rho_plus_(rho_plus) {}

double GluingLattice::block_width() const {
  if (!periodic()) throw NotApplicable("block width is defined only for eps=+1");
  return rho_plus_.value() - rho_minus_;
}

double GluingLattice::lattice_point(int r) const {
  if (r == 0) throw DomainError("rho_{0,0} is not defined; the base block is (rho_{0,-1}, rho_{0,1})");
  if (!periodic()) {
    if (r != -1) throw NotApplicable("only rho_{0,-1} exists for eps in {-1,0}");
    return rho_minus_;
  }
  const double rp = rho_plus_.value();
  const double rr = static_cast<double>(r);
  if (r >= 1) return rr * rp - (rr - 1.0) * rho_minus_;
  return (rr + 1.0) * rp - rr * rho_minus_;
}

std::vector<std::pair<int, double>> GluingLattice::junctions_in(double a, double b) const {
  std::vector<std::pair<int, double>> out;
  if (!periodic()) {
    if (rho_minus_ >= a && rho_minus_ <= b) out.emplace_back(-1, rho_minus_);
    return out;
  }
  const double W = block_width();
  const auto k0 = static_cast<long long>(std::floor((a - rho_minus_) / W)) - 1;
  const auto k1 = static_cast<long long>(std::ceil((b - rho_minus_) / W)) + 1;
  for (long long k = k0; k <= k1; ++k) {
    const int r = static_cast<int>(k >= 1 ? k : k - 1);
    const double rho = lattice_point(r);
    if (rho >= a && rho <= b) out.emplace_back(r, rho);
  }
  return out;
}

double lattice_point(int r, const GluingLattice& lat) { return lat.lattice_point(r); }

GluedProfile::GluedProfile(ProfileSolution sol)
    : sol_(std::move(sol)), lat_(sol_.rho_minus(), sol_.rho_plus()) {}

double GluedProfile::block_scale() const {
  return lat_.periodic() ? lat_.block_width() : -lat_.rho_minus();
}

BlockCoordinate GluedProfile::reduce(double rho) const {
  if (!std::isfinite(rho)) throw DomainError("rho must be finite");
  const double y = rho - lat_.rho_minus();
  BlockCoordinate b;
  if (!lat_.periodic()) {
    if (y >= 0.0) {
      b.k = 0;
      b.x = y;
    } else {
      b.k = -1;
      b.x = -y;
    }
    return b;
  }
  const double W = lat_.block_width();
  double k = std::floor(y / W);
  double x = std::fma(-k, W, y);
  if (x < 0.0) {
    k -= 1.0;
    x += W;
  } else if (x >= W) {
    k += 1.0;
    x -= W;
  }
  // Points within rounding of a lattice point are the junction itself.
  const double snap = 8.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(rho), W);
  if (x <= snap) {
    x = 0.0;
  } else if (W - x <= snap) {
    k += 1.0;
    x = 0.0;
  }
  b.k = static_cast<long long>(k);
  b.x = x;
  return b;
}

double GluedProfile::expand(const BlockCoordinate& b) const {
  if (!lat_.periodic()) return b.k == 0 ? lat_.rho_minus() + b.x : lat_.rho_minus() - b.x;
  return lat_.rho_minus() + static_cast<double>(b.k) * lat_.block_width() + b.x;
}

ProfilePoint GluedProfile::point(double rho) const {
  const BlockCoordinate b = reduce(rho);
  if (!lat_.periodic()) return sol_.locate_from_end(RootSide::Upper, b.x);
  const double W = lat_.block_width();
  // Even blocks run from xi02 (left) to xi01 (right), odd ones the other way.
  const bool even = b.k % 2 == 0;
  const RootSide near = even ? RootSide::Upper : RootSide::Lower;
  const RootSide far = even ? RootSide::Lower : RootSide::Upper;
  if (b.x <= 0.5 * W) return sol_.locate_from_end(near, b.x);
  return sol_.locate_from_end(far, W - b.x);
}

double GluedProfile::junction_offset(int r, double offset) const {
  const double J = lat_.lattice_point(r);
  const double root = junction_value(r);
  const double d = std::abs(offset);
  if (lat_.periodic() && d > 0.5 * lat_.block_width()) return F(J + offset) - root;
  const RootSide side = root == sol_.roots().xi02 ? RootSide::Upper : RootSide::Lower;
  const ProfilePoint p = sol_.locate_from_end(side, d);
  switch (p.chart) {
    case Chart::Upper:
      return -(p.coord * p.coord);
    case Chart::Lower:
      return p.coord * p.coord;
    default:
      return p.xi - root;
  }
}

ProfileJet GluedProfile::jet(double rho) const {
  const BlockCoordinate b = reduce(rho);
  const ProfilePoint p = point(rho);
  const double C = sol_.C();
  ProfileJet j;
  j.block = b.k;
  j.F = p.xi;
  j.T = std::max(p.T, 0.0);
  const double F = j.F;
  const double T = j.T;
  const double T1 = potential_dT(F, C);
  const double T2 = potential_d2T(F, C);
  const double T3 = potential_d3T(F);
  j.dF = parity_sign(b.k) * F * std::sqrt(T / 3.0);
  j.d2F = (2.0 * F * T + F * F * T1) / 6.0;
  const double a3 = 2.0 * T + 4.0 * F * T1 + F * F * T2;
  j.d3F = a3 * j.dF / 6.0;
  j.d4F = ((6.0 * T1 + 6.0 * F * T2 + F * F * T3) * j.dF * j.dF + a3 * j.d2F) / 6.0;
  return j;
}

double GluedProfile::derivative_F(double rho, int order) const {
  if (order < 1 || order > 3) throw DomainError("derivative_F: order must be 1, 2 or 3");
  const ProfileJet j = jet(rho);
  return order == 1 ? j.dF : order == 2 ? j.d2F : j.d3F;
}

double GluedProfile::reflect_rho_r(double xi, int r) const {
  const double r0 = sol_.rho0(xi);
  const double rm = lat_.rho_minus();
  if (!lat_.periodic()) {
    if (r == 0) return r0;
    if (r == -1) return 2.0 * rm - r0;
    throw NotApplicable("only the blocks r = 0 and r = -1 exist for eps in {-1,0}");
  }
  const double rp = lat_.rho_plus().value();
  const double rr = static_cast<double>(r);
  if (r % 2 == 0) return rr * (rp - rm) + r0;
  return (rr + 1.0) * rp - (rr - 1.0) * rm - r0;
}

double GluedProfile::junction_value(int r) const {
  lat_.lattice_point(r);  // validates r
  return GluingLattice::block_of_index(r) % 2 == 0 ? sol_.roots().xi02 : sol_.roots().xi01;
}

std::string GluedProfile::csv(double a, double b, int n) const {
  if (n < 2) throw DomainError("csv: need at least two samples");
  std::ostringstream os;
  os << "rho,F\n";
  char buf[64];
  for (int i = 0; i < n; ++i) {
    const double rho = i == n - 1 ? b : a + (b - a) * i / (n - 1);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", rho, F(rho));
    os << buf;
  }
  return os.str();
}

double eval_F(double rho, const GluedProfile& gp) { return gp.F(rho); }
double eval_Gamma(double rho, const GluedProfile& gp) { return gp.Gamma(rho); }
double derivative_F(double rho, int order, const GluedProfile& gp) { return gp.derivative_F(rho, order); }

std::pair<double, double> default_window(const GluedProfile& gp) {
  const auto& lat = gp.lattice();
  if (lat.periodic()) return {lat.lattice_point(-2), lat.lattice_point(2)};
  const double s = gp.block_scale();
  return {lat.rho_minus() - 2.0 * s, lat.rho_minus() + 2.0 * s};
}

namespace {

constexpr int kExtraPoints = 5;  // stencil accuracy order

// Plateau of the step sweep: the consecutive pair that agrees best, Richardson-combined.
double sweep_estimate(const GluedProfile& gp, int r, int order, int dir) {
  const double scale = gp.block_scale();
  const double steps[] = {1e-2, 1e-3, 1e-4, 1e-5};
  // Differencing F - F(J) keeps the stencil free of the ulp noise of F itself.
  auto f = [&](double offset) { return gp.junction_offset(r, offset); };
  double est[4];
  for (int i = 0; i < 4; ++i) {
    est[i] = numerics::one_sided_derivative(f, 0.0, steps[i] * scale, order, order + kExtraPoints, dir);
  }
  int best = 0;
  double best_gap = std::abs(est[1] - est[0]);
  for (int i = 1; i < 3; ++i) {
    const double gap = std::abs(est[i + 1] - est[i]);
    if (gap < best_gap) {
      best_gap = gap;
      best = i;
    }
  }
  const double factor = std::pow(10.0, kExtraPoints) - 1.0;
  return est[best + 1] + (est[best + 1] - est[best]) / factor;
}

}  // namespace

JunctionSmoothnessReport junction_smoothness_report(const GluedProfile& gp, double a, double b) {
  JunctionSmoothnessReport rep;
  for (const auto& [r, J] : gp.lattice().junctions_in(a, b)) {
    JunctionAudit au;
    au.r = r;
    au.rho = J;
    const ProfileJet jt = gp.jet(J);
    au.analytic = {jt.dF, jt.d2F, jt.d3F, jt.d4F};
    for (int m = 1; m <= 4; ++m) {
      const auto i = static_cast<std::size_t>(m - 1);
      au.left[i] = sweep_estimate(gp, r, m, -1);
      au.right[i] = sweep_estimate(gp, r, m, +1);
      au.mismatch[i] = std::abs(au.left[i] - au.right[i]);
      au.analytic_error[i] = std::max(std::abs(au.left[i] - au.analytic[i]), std::abs(au.right[i] - au.analytic[i]));
      rep.max_mismatch[i] = std::max(rep.max_mismatch[i], au.mismatch[i]);
      rep.max_analytic_error[i] = std::max(rep.max_analytic_error[i], au.analytic_error[i]);
    }
    rep.junctions.push_back(au);
  }
  for (std::size_t i = 0; i < 3; ++i) {
    if (!(rep.max_mismatch[i] <= rep.thresholds[i])) rep.passed = false;
  }
  // Order 2 must also match the analytic one-sided limit.
  if (!(rep.max_analytic_error[1] <= rep.thresholds[1])) rep.passed = false;
  return rep;
}

JunctionSmoothnessReport junction_smoothness_report(const GluedProfile& gp) {
  const auto [a, b] = default_window(gp);
  return junction_smoothness_report(gp, a, b);
}

}  // namespace bicons
