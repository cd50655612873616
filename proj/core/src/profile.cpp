#include "bicons/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "bicons/errors.hpp"
#include "bicons/numerics/quadrature.hpp"
#include "bicons/numerics/root.hpp"

namespace bicons {

namespace {

constexpr double kSqrt3 = 1.7320508075688772935;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kInitialIntervals = 64;
constexpr double kTableGapFraction = 1e-3;
constexpr double kTailFraction = 1e-3;

template <class Fn>
double quad(Fn&& f, double a, double b) {
  if (a == b) return 0.0;
  const auto r = numerics::integrate_gk15(f, a, b, 1e-16, 1e-15, 2000);
  if (!r.converged) throw NumericalFailure("profile quadrature did not converge");
  return r.value;
}

std::string fmt_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void check_admissible(SpaceFormSign eps, double C) {
  if (!std::isfinite(C)) throw InadmissibleParameters("C must be finite");
  if (eps.value() == 1 && !(C > 4.0 / kSqrt3)) {
    throw InadmissibleParameters("eps=+1 requires C > 4/sqrt(3) ~ 2.3094 (T <= 0 everywhere otherwise); got C = " +
                                 fmt_g17(C));
  }
  if (eps.value() == 0 && !(C > 0.0)) {
    throw InadmissibleParameters("eps=0 requires C > 0; got C = " + fmt_g17(C));
  }
}

double potential_T(double xi, SpaceFormSign eps, double C) {
  if (!(xi >= 0.0)) throw DomainError("potential_T: xi must be >= 0, got " + fmt_g17(xi));
  return -std::pow(xi, 8.0 / 3.0) + C * xi * xi - 3.0 * eps.as_double();
}

double potential_dT(double xi, double C) { return -(8.0 / 3.0) * std::pow(xi, 5.0 / 3.0) + 2.0 * C * xi; }

double potential_d2T(double xi, double C) { return -(40.0 / 9.0) * std::cbrt(xi * xi) + 2.0 * C; }

double potential_d3T(double xi) { return -(80.0 / 27.0) / std::cbrt(xi); }

RootPair find_roots(SpaceFormSign eps, double C) {
  check_admissible(eps, C);
  const double e = eps.as_double();
  RootPair out;
  if (C > 0.0) out.xi_star = std::pow(0.75 * C, 1.5);

  // T/xi^2 has the same positive roots and is better scaled than T.
  auto h = [&](double x) {
    const double x23 = std::cbrt(x * x);
    const double val = -x23 + C - 3.0 * e / (x * x);
    const double der = -(2.0 / 3.0) * x23 / x + 6.0 * e / (x * x * x);
    return std::pair<double, double>{val, der};
  };
  numerics::RootOptions opt;
  opt.x_rel_tol = 1e-15;

  double lo = out.xi_star.value_or(0.0);
  double hi = std::max(std::pow(std::max(C, 1.0), 1.5), 1.0);
  while (potential_T(hi, eps, C) >= 0.0) hi *= 2.0;
  if (lo <= 0.0) {
    lo = 0.5 * hi;
    while (potential_T(lo, eps, C) <= 0.0) lo *= 0.5;
  }
  out.xi02 = numerics::safeguarded_newton(h, lo, hi, 0.5 * (lo + hi), opt);

  if (eps.value() == 1) {
    // T <= C xi^2 - 3 < 0 below sqrt(3/C), and T(xi*) > 0 by admissibility.
    const double a = std::sqrt(3.0 / C);
    out.xi01 = numerics::safeguarded_newton(h, a, *out.xi_star, 0.5 * (a + *out.xi_star), opt);
  } else {
    out.xi01 = 0.0;
  }
  return out;
}

ExtendedReal ProfileSolution::rho_plus() const {
  return eps_.value() == 1 ? ExtendedReal::finite(rho_plus_) : ExtendedReal::plus_infinity();
}

double ProfileSolution::q_upper(double s) const {
  const double r = roots_.xi02;
  if (s == 0.0) return -potential_dT(r, C_);
  return -r02_83_ * std::expm1((8.0 / 3.0) * std::log1p(-s / r)) / s + C_ * (-2.0 * r + s);
}

double ProfileSolution::q_lower(double s) const {
  const double r = roots_.xi01;
  if (s == 0.0) return potential_dT(r, C_);
  return -r01_83_ * std::expm1((8.0 / 3.0) * std::log1p(s / r)) / s + C_ * (2.0 * r + s);
}

double ProfileSolution::chart_integrand(Chart chart, double c) const {
  switch (chart) {
    case Chart::Upper: {
      const double s = c * c;
      return 2.0 * kSqrt3 / ((roots_.xi02 - s) * std::sqrt(q_upper(s)));
    }
    case Chart::Lower: {
      const double s = c * c;
      return 2.0 * kSqrt3 / ((roots_.xi01 + s) * std::sqrt(q_lower(s)));
    }
    case Chart::Middle:
    case Chart::Tail: {
      // T(e^c) with xi^{8/3} = e^{8c/3}.
      const double e2 = std::exp(2.0 * c);
      return -std::sqrt(3.0 / (-std::exp((8.0 / 3.0) * c) + C_ * e2 - 3.0 * eps_.as_double()));
    }
  }
  return 0.0;
}

const ProfileSolution::ChartTable& ProfileSolution::table_of(Chart chart) const {
  switch (chart) {
    case Chart::Upper:
      return upper_;
    case Chart::Lower:
      return lower_;
    default:
      return middle_;
  }
}

double ProfileSolution::chart_value(const ChartTable& tab, Chart chart, double c) const {
  const auto it = std::upper_bound(tab.c.begin(), tab.c.end(), c);
  std::size_t k = static_cast<std::size_t>(it - tab.c.begin());
  if (k == tab.c.size()) {
    k = tab.c.size() - 1;
  } else if (k > 0 && c - tab.c[k - 1] < tab.c[k] - c) {
    k = k - 1;
  }
  if (c == tab.c[k]) return tab.v[k];
  return tab.v[k] + quad([&](double x) { return chart_integrand(chart, x); }, tab.c[k], c);
}

void ProfileSolution::build_table(ChartTable& tab, Chart chart, double c0, double c1, double base_value,
                                  double target_gap) {
  auto f = [&](double x) { return chart_integrand(chart, x); };
  std::vector<double> nodes;
  if (tab.c.empty()) {
    for (int i = 0; i <= kInitialIntervals; ++i) nodes.push_back(c0 + (c1 - c0) * i / kInitialIntervals);
    nodes.back() = c1;
  } else {
    nodes = tab.c;
  }
  std::vector<double> inc(nodes.size() - 1);
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) inc[i] = quad(f, nodes[i], nodes[i + 1]);

  if (target_gap > 0.0) {
    std::vector<double> refined{nodes.front()};
    std::vector<double> refined_inc;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
      const int m = static_cast<int>(std::ceil(std::abs(inc[i]) / target_gap));
      if (m <= 1) {
        refined.push_back(nodes[i + 1]);
        refined_inc.push_back(inc[i]);
        continue;
      }
      for (int j = 1; j <= m; ++j) {
        const double b = j == m ? nodes[i + 1] : nodes[i] + (nodes[i + 1] - nodes[i]) * j / m;
        refined_inc.push_back(quad(f, refined.back(), b));
        refined.push_back(b);
      }
    }
    nodes = std::move(refined);
    inc = std::move(refined_inc);
  }

  tab.c = nodes;
  tab.v.assign(nodes.size(), 0.0);
  tab.dv.assign(nodes.size(), 0.0);
  // Upper/Lower are anchored at c = 0 (the root); Middle at its top end s_top.
  if (chart == Chart::Middle) {
    tab.v.back() = base_value;
    for (std::size_t i = nodes.size() - 1; i-- > 0;) tab.v[i] = tab.v[i + 1] - inc[i];
  } else {
    tab.v.front() = base_value;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) tab.v[i + 1] = tab.v[i] + inc[i];
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) tab.dv[i] = f(nodes[i]);
}

ProfileSolution::ProfileSolution(const ProfileParams& params) : eps_(params.eps), C_(params.C) {
  roots_ = find_roots(eps_, C_);
  r01_83_ = std::pow(roots_.xi01, 8.0 / 3.0);
  r02_83_ = std::pow(roots_.xi02, 8.0 / 3.0);
  const double r1 = roots_.xi01;
  const double r2 = roots_.xi02;
  window_ = std::min(0.1 * (r2 - r1), 0.5);
  const bool two_roots = eps_.value() == 1;

  double xi00 = two_roots ? std::sqrt(r1 * r2) : 0.5 * r2;
  if (params.xi00) {
    xi00 = *params.xi00;
    if (!(xi00 > r1 && xi00 < r2)) {
      throw DomainError("xi00 = " + fmt_g17(xi00) + " must lie strictly between the roots " + fmt_g17(r1) +
                        " and " + fmt_g17(r2));
    }
  }

  s_top_ = std::log(r2 - window_);
  s_bot_ = two_roots ? std::log(r1 + window_) : std::log(kTailFraction * r2);
  const double t_end = std::sqrt(window_);

  // Provisional normalization: rho = 0 at s_top; shifted so rho(xi00) = 0 below.
  for (int pass = 0; pass < 2; ++pass) {
    double gap = 0.0;
    if (pass == 1) {
      const double span = upper_.v.back() + (middle_.v.front() - middle_.v.back()) +
                          (two_roots ? lower_.v.back() : 0.0);
      gap = kTableGapFraction * span;
    }
    build_table(upper_, Chart::Upper, 0.0, t_end, 0.0, gap);
    build_table(middle_, Chart::Middle, s_bot_, s_top_, 0.0, gap);
    if (two_roots) build_table(lower_, Chart::Lower, 0.0, t_end, 0.0, gap);
  }
  rho_minus_ = -upper_.v.back();
  rho_plus_ = two_roots ? middle_.v.front() + lower_.v.back() : 0.0;

  xi00_ = std::numeric_limits<double>::quiet_NaN();
  const double shift = rho0(xi00);
  rho_minus_ -= shift;
  rho_plus_ -= shift;
  for (double& v : middle_.v) v -= shift;
  xi00_ = xi00;

  if (!(rho_minus_ < 0.0) || (two_roots && !(rho_plus_ > 0.0))) {
    throw NumericalFailure("profile limits have the wrong sign");
  }
}

double ProfileSolution::tail_rho(double s) const {
  return middle_.v.front() + quad([&](double x) { return chart_integrand(Chart::Tail, x); }, s_bot_, s);
}

double ProfileSolution::rho0(double xi) const {
  const double r1 = roots_.xi01;
  const double r2 = roots_.xi02;
  if (!(xi > r1 && xi < r2)) {
    throw DomainError("rho0: xi = " + fmt_g17(xi) + " outside the open interval (" + fmt_g17(r1) + ", " +
                      fmt_g17(r2) + ")");
  }
  if (xi == xi00_) return 0.0;
  if (r2 - xi <= window_) return rho_minus_ + chart_value(upper_, Chart::Upper, std::sqrt(r2 - xi));
  if (eps_.value() == 1 && xi - r1 <= window_) return rho_plus_ - chart_value(lower_, Chart::Lower, std::sqrt(xi - r1));
  const double s = std::log(xi);
  if (s >= s_bot_) return chart_value(middle_, Chart::Middle, std::min(s, s_top_));
  return tail_rho(s);
}

double ProfileSolution::drho0_dxi(double xi) const {
  const double r1 = roots_.xi01;
  const double r2 = roots_.xi02;
  if (!(xi > r1 && xi < r2)) throw DomainError("drho0_dxi: xi outside the open root interval");
  double T;
  if (r2 - xi <= window_) {
    T = (r2 - xi) * q_upper(r2 - xi);
  } else if (eps_.value() == 1 && xi - r1 <= window_) {
    T = (xi - r1) * q_lower(xi - r1);
  } else {
    T = potential_T(xi, eps_, C_);
  }
  return -kSqrt3 / (xi * std::sqrt(T));
}

double ProfileSolution::chart_solve(const ChartTable& tab, Chart chart, double target) const {
  const auto& c = tab.c;
  const auto& v = tab.v;
  const bool increasing = v.back() > v.front();
  // Interval i with target between v[i] and v[i+1].
  std::size_t i;
  if (increasing) {
    i = static_cast<std::size_t>(std::upper_bound(v.begin(), v.end(), target) - v.begin());
  } else {
    i = static_cast<std::size_t>(std::upper_bound(v.begin(), v.end(), target, std::greater<>()) - v.begin());
  }
  i = std::clamp<std::size_t>(i, 1, v.size() - 1) - 1;
  if (target == v[i]) return c[i];

  // Hermite seed for the inverse on the interval.
  const double dvv = v[i + 1] - v[i];
  const double u = (target - v[i]) / dvv;
  const double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
  const double h10 = u * (1 - u) * (1 - u);
  const double h01 = u * u * (3 - 2 * u);
  const double h11 = u * u * (u - 1);
  double lo = c[i];
  double hi = c[i + 1];
  double x = h00 * c[i] + h10 * dvv / tab.dv[i] + h01 * c[i + 1] + h11 * dvv / tab.dv[i + 1];
  if (!(x > lo && x < hi)) x = lo + u * (hi - lo);

  for (int it = 0; it < 60; ++it) {
    const double g = chart_value(tab, chart, x) - target;
    if (g == 0.0) return x;
    const bool below = increasing ? g < 0.0 : g > 0.0;
    if (below) lo = x;
    else hi = x;
    double next = x - g / chart_integrand(chart, x);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = next - x;
    x = next;
    if (std::abs(step) <= 4.0 * kEps * std::abs(x) || lo >= hi) return x;
  }
  return x;
}

double ProfileSolution::tail_solve(double rho) const {
  // rho(s) decreases in s and grows like -s or exp(-s) below the table, so
  // Newton runs on log(rho - rho_minus), which is close to linear in s.
  auto integrand = [&](double x) { return chart_integrand(Chart::Tail, x); };
  const double target = std::log(rho - rho_minus_);
  double hi = s_bot_;
  double rho_hi = middle_.v.front();
  double lo = -std::numeric_limits<double>::infinity();
  double rho_lo = 0.0;
  double s = hi;
  double rho_s = rho_hi;
  const double s_floor = std::log(std::numeric_limits<double>::min());
  for (int it = 0; it < 200; ++it) {
    const double dist = rho_s - rho_minus_;
    const double slope = integrand(s) / dist;
    double next = s - (std::log(dist) - target) / slope;
    if (std::isfinite(lo) && !(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (!std::isfinite(lo) && !(next < hi)) next = hi - 1.0;
    if (next < s_floor) throw NumericalFailure("profile: rho = " + fmt_g17(rho) + " underflows xi");
    const bool from_hi = !std::isfinite(lo) || std::abs(next - hi) <= std::abs(next - lo);
    const double rho_next = (from_hi ? rho_hi : rho_lo) + quad(integrand, from_hi ? hi : lo, next);
    const double step = next - s;
    s = next;
    rho_s = rho_next;
    if (rho_next > rho) {
      lo = s;
      rho_lo = rho_next;
    } else {
      hi = s;
      rho_hi = rho_next;
    }
    if (rho_next == rho || std::abs(step) <= 4.0 * kEps * std::max(1.0, std::abs(s))) return s;
  }
  throw NumericalFailure("profile: tail inversion did not converge for rho = " + fmt_g17(rho));
}

ProfilePoint ProfileSolution::point_in_chart(Chart chart, double c) const {
  ProfilePoint p;
  p.chart = chart;
  p.coord = c;
  switch (chart) {
    case Chart::Upper:
      p.xi = roots_.xi02 - c * c;
      p.T = c * c * q_upper(c * c);
      break;
    case Chart::Lower:
      p.xi = roots_.xi01 + c * c;
      p.T = c * c * q_lower(c * c);
      break;
    case Chart::Middle:
    case Chart::Tail:
      p.xi = std::exp(c);
      p.T = potential_T(p.xi, eps_, C_);
      break;
  }
  return p;
}

ProfilePoint ProfileSolution::locate(double rho) const {
  const bool two_roots = eps_.value() == 1;
  if (!(rho > rho_minus_) || (two_roots && !(rho < rho_plus_)) || !std::isfinite(rho)) {
    throw DomainError("invert_rho0: rho = " + fmt_g17(rho) + " outside (" + fmt_g17(rho_minus_) + ", " +
                      (two_roots ? fmt_g17(rho_plus_) : std::string("inf")) + ")");
  }
  const double d = rho - rho_minus_;
  if (d <= upper_.v.back()) return point_in_chart(Chart::Upper, chart_solve(upper_, Chart::Upper, d));
  if (two_roots && rho_plus_ - rho <= lower_.v.back()) {
    return point_in_chart(Chart::Lower, chart_solve(lower_, Chart::Lower, rho_plus_ - rho));
  }
  if (rho <= middle_.v.front()) return point_in_chart(Chart::Middle, chart_solve(middle_, Chart::Middle, rho));
  return point_in_chart(Chart::Tail, tail_solve(rho));
}

ProfilePoint ProfileSolution::locate_from_end(RootSide side, double distance) const {
  if (!(distance >= 0.0)) throw DomainError("locate_from_end: distance must be >= 0");
  if (side == RootSide::Upper) {
    if (distance <= upper_.v.back()) {
      return point_in_chart(Chart::Upper, distance == 0.0 ? 0.0 : chart_solve(upper_, Chart::Upper, distance));
    }
    return locate(rho_minus_ + distance);
  }
  if (eps_.value() != 1) throw NotApplicable("locate_from_end: no lower root for eps != +1");
  if (distance <= lower_.v.back()) {
    return point_in_chart(Chart::Lower, distance == 0.0 ? 0.0 : chart_solve(lower_, Chart::Lower, distance));
  }
  return locate(rho_plus_ - distance);
}

double ProfileSolution::invert(double rho) const {
  if (rho == 0.0) return xi00_;
  return locate(rho).xi;
}

double ProfileSolution::rho_at(const ProfilePoint& p) const {
  switch (p.chart) {
    case Chart::Upper:
      return rho_minus_ + chart_value(upper_, Chart::Upper, p.coord);
    case Chart::Lower:
      return rho_plus_ - chart_value(lower_, Chart::Lower, p.coord);
    case Chart::Middle:
      return chart_value(middle_, Chart::Middle, p.coord);
    case Chart::Tail:
      return tail_rho(p.coord);
  }
  return 0.0;
}

double ProfileSolution::distance_from_end(RootSide side, const ProfilePoint& p) const {
  if (side == RootSide::Upper) {
    if (p.chart == Chart::Upper) return chart_value(upper_, Chart::Upper, p.coord);
    return rho_at(p) - rho_minus_;
  }
  if (eps_.value() != 1) throw NotApplicable("distance_from_end: no lower root for eps != +1");
  if (p.chart == Chart::Lower) return chart_value(lower_, Chart::Lower, p.coord);
  return rho_plus_ - rho_at(p);
}

double ProfileSolution::endpoint_coefficient(RootSide side) const {
  if (side == RootSide::Upper) {
    const double r = roots_.xi02;
    return std::sqrt(3.0 / (8.0 * std::pow(r, 5.0 / 3.0) - 6.0 * C_ * r));
  }
  if (eps_.value() != 1) {
    throw NotApplicable("endpoint coefficient at xi01 = 0 is not defined for eps != +1");
  }
  const double r = roots_.xi01;
  return std::sqrt(3.0 / (-8.0 * std::pow(r, 5.0 / 3.0) + 6.0 * C_ * r));
}

double ProfileSolution::inverse_sqrt_T_integral(double a, double b) const {
  const double r1 = roots_.xi01;
  const double r2 = roots_.xi02;
  const bool two_roots = eps_.value() == 1;
  if (!(a <= b) || !(a >= r1) || !(b <= r2) || (!two_roots && !(a > 0.0))) {
    throw DomainError("inverse_sqrt_T_integral: need xi01 <= a <= b <= xi02");
  }
  const double m = two_roots ? 0.5 * (r1 + r2) : r2 - window_;
  double total = 0.0;
  if (a < m) {
    const double b1 = std::min(b, m);
    if (two_roots) {
      total += quad([&](double t) { return 2.0 / std::sqrt(q_lower(t * t)); }, std::sqrt(a - r1), std::sqrt(b1 - r1));
    } else {
      total += quad([&](double x) { return 1.0 / std::sqrt(potential_T(x, eps_, C_)); }, a, b1);
    }
  }
  if (b > m) {
    const double a1 = std::max(a, m);
    total += quad([&](double t) { return 2.0 / std::sqrt(q_upper(t * t)); }, std::sqrt(r2 - b), std::sqrt(r2 - a1));
  }
  return total;
}

std::vector<ProfileTableRow> ProfileSolution::table() const {
  std::vector<ProfileTableRow> rows;
  auto push = [&](Chart chart, double c, double rho) {
    const ProfilePoint p = point_in_chart(chart, c);
    rows.push_back({p.xi, rho, -kSqrt3 / (p.xi * std::sqrt(p.T))});
  };
  if (eps_.value() == 1) {
    for (std::size_t i = 1; i < lower_.c.size(); ++i) push(Chart::Lower, lower_.c[i], rho_plus_ - lower_.v[i]);
  }
  const std::size_t m0 = eps_.value() == 1 ? 1 : 0;
  for (std::size_t i = m0; i < middle_.c.size(); ++i) push(Chart::Middle, middle_.c[i], middle_.v[i]);
  for (std::size_t i = upper_.c.size() - 1; i-- > 1;) push(Chart::Upper, upper_.c[i], rho_minus_ + upper_.v[i]);
  return rows;
}

std::string ProfileSolution::table_csv() const {
  std::ostringstream os;
  os << "xi,rho,drho_dxi\n";
  for (const auto& r : table()) os << fmt_g17(r.xi) << ',' << fmt_g17(r.rho) << ',' << fmt_g17(r.drho_dxi) << '\n';
  return os.str();
}

double rho0(double xi, const ProfileSolution& sol) { return sol.rho0(xi); }

double invert_rho0(double rho, const ProfileSolution& sol) { return sol.invert(rho); }

Rho0Limits rho0_limits(const ProfileSolution& sol) { return {sol.rho_minus(), sol.rho_plus()}; }

double endpoint_singularity_coeff(const ProfileSolution& sol, RootSide side) {
  return sol.endpoint_coefficient(side);
}

}  // namespace bicons
