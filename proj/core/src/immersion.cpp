#include "bicons/immersion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "bicons/errors.hpp"
#include "bicons/numerics/finite_difference.hpp"
#include "bicons/parallel.hpp"

namespace bicons {

namespace {

constexpr double kSqrt3 = 1.7320508075688772935;
constexpr double kDriftCap = 1e-5;

std::string sweep_spec(const SweepOptions& opt, std::size_t kept) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "uniform n=%d on [%.17g, %.17g], %zu points after junction guard", opt.n, opt.a,
                opt.b, kept);
  return buf;
}

std::string grid_spec(const ImmersionGrid& g) {
  char buf[200];
  std::snprintf(buf, sizeof buf, "n_rho=%d on [%.17g, %.17g] x n_theta=%d on [%.17g, %.17g]", g.n_rho(),
                g.rho.front(), g.rho.back(), g.n_theta(), g.theta.front(), g.theta.back());
  return buf;
}

/// Runs RK4 steps and applies the frame correction every `every` steps.
class FramePath {
 public:
  FramePath(const AmbientModel& model, int every) : model_(model), every_(std::max(every, 1)) {}

  template <class Coef>
  FrameState step(const FrameState& s, FrameDirection dir, double h, const Coef& c0, const Coef& ch, const Coef& c1) {
    const FrameState k1 = frame_ode_rhs(s, dir, c0, model_);
    const FrameState k2 = frame_ode_rhs(s + (0.5 * h) * k1, dir, ch, model_);
    const FrameState k3 = frame_ode_rhs(s + (0.5 * h) * k2, dir, ch, model_);
    const FrameState k4 = frame_ode_rhs(s + h * k3, dir, c1, model_);
    FrameState out = s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double d = model_.gram_drift(out);
    drift_ = std::max(drift_, d);
    if (!(d <= kDriftCap))
      throw NumericalFailure("integrate_immersion: frame drift " + std::to_string(d) + " exceeds the 1e-5 cap");
    if (++since_ % every_ == 0) out = model_.correct(out);
    return out;
  }

  double drift() const { return drift_; }
  void set_drift(double d) { drift_ = d; }

 private:
  const AmbientModel& model_;
  int every_;
  long long since_ = 0;
  double drift_ = 0.0;
};

/// Coefficients along a rho segment at RK4 nodes: c[2k] at step starts, c[2k+1] at midpoints.
struct RhoPlan {
  std::vector<int> substeps;             // per interval
  std::vector<std::vector<FrameCoefficients>> coef;  // per interval, 2*substeps+1 entries
};

RhoPlan plan_rho(const GluedMetric& gm, const std::vector<double>& rho, double hmax) {
  RhoPlan p;
  for (std::size_t i = 0; i + 1 < rho.size(); ++i) {
    const double len = rho[i + 1] - rho[i];
    const int m = std::max(1, static_cast<int>(std::ceil(len / hmax)));
    std::vector<FrameCoefficients> c(2 * static_cast<std::size_t>(m) + 1);
    for (int k = 0; k <= 2 * m; ++k) {
      const double r = k == 2 * m ? rho[i + 1] : rho[i] + len * k / (2.0 * m);
      c[static_cast<std::size_t>(k)] = frame_coefficients(r, gm);
    }
    p.substeps.push_back(m);
    p.coef.push_back(std::move(c));
  }
  return p;
}

FrameState run_rho_interval(FramePath& path, FrameState s, const RhoPlan& plan, std::size_t i, double len) {
  const int m = plan.substeps[i];
  const double h = len / m;
  const auto& c = plan.coef[i];
  for (int k = 0; k < m; ++k) s = path.step(s, FrameDirection::Rho, h, c[2 * k], c[2 * k + 1], c[2 * k + 2]);
  return s;
}

FrameState run_rho_interval_back(FramePath& path, FrameState s, const RhoPlan& plan, std::size_t i, double len) {
  const int m = plan.substeps[i];
  const double h = -len / m;
  const auto& c = plan.coef[i];
  for (int k = m - 1; k >= 0; --k) s = path.step(s, FrameDirection::Rho, h, c[2 * k + 2], c[2 * k + 1], c[2 * k]);
  return s;
}

int theta_substeps(const FrameCoefficients& c, double len, double rate_step) {
  const double rate = c.Gamma * (std::abs(c.omega) + std::abs(c.lambda2) + 1.0);
  const double n = std::ceil(rate * std::abs(len) / rate_step);
  if (!(n < 1e8)) throw NumericalFailure("integrate_immersion: theta step budget exceeded (Gamma too large)");
  return std::max(1, static_cast<int>(n));
}

FrameState run_theta_interval(FramePath& path, FrameState s, const FrameCoefficients& c, double len,
                              double rate_step) {
  const int m = theta_substeps(c, len, rate_step);
  const double h = len / m;
  for (int k = 0; k < m; ++k) s = path.step(s, FrameDirection::Theta, h, c, c, c);
  return s;
}

double vnorm(const Vec4& a) { return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3]); }

Vec4 vdiff(const Vec4& a, const Vec4& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]}; }

/// 7-point central first derivative on a uniform grid.
template <class Get>
Vec4 d7(Get&& get, double h) {
  static constexpr double w[7] = {-1.0, 9.0, -45.0, 0.0, 45.0, -9.0, 1.0};
  Vec4 out{};
  for (int k = 0; k < 7; ++k) {
    const Vec4 v = get(k - 3);
    for (int c = 0; c < 4; ++c) out[c] += w[k] * v[c];
  }
  for (double& v : out) v /= 60.0 * h;
  return out;
}

/// Central first derivative of order 2 * kHalf on a uniform grid (11 points).
constexpr int kHalf = 5;

template <class Get>
Vec4 d_wide(Get&& get, double h) {
  static const std::vector<double> w = [] {
    std::vector<double> nodes;
    for (int k = -kHalf; k <= kHalf; ++k) nodes.push_back(k);
    return numerics::fornberg_weights(0.0, nodes, 1);
  }();
  Vec4 out{};
  for (int k = 0; k < 2 * kHalf + 1; ++k) {
    const Vec4 v = get(k - kHalf);
    for (int c = 0; c < 4; ++c) out[c] += w[static_cast<std::size_t>(k)] * v[c];
  }
  for (double& v : out) v /= h;
  return out;
}

struct SecondForm {
  double h11, h22, h12;
};

SecondForm second_form_at(const ImmersionGrid& g, const GluedMetric& gm, const AmbientModel& model, int i, int j) {
  const double hr = g.rho[1] - g.rho[0];
  const double ht = g.theta[1] - g.theta[0];
  const FrameState& s = g.at(i, j);
  const double G = 1.0 / gm.profile().F(g.rho[static_cast<std::size_t>(i)]);
  const Vec4 dE1r = d_wide([&](int k) { return g.at(i + k, j).E1; }, hr);
  const Vec4 dE2t = d_wide([&](int k) { return g.at(i, j + k).E2; }, ht);
  const Vec4 dE1t = d_wide([&](int k) { return g.at(i, j + k).E1; }, ht);
  return {model.inner(dE1r, s.N), model.inner(dE2t, s.N) / G, model.inner(dE1t, s.N) / G};
}

}  // namespace

ShapeOperatorSample shape_operator(double rho, const GluedMetric& gm) {
  const double F = gm.profile().F(rho);
  const double F43 = F * std::cbrt(F);
  ShapeOperatorSample s;
  s.lambda1 = -F43 / (3.0 * kSqrt3);
  s.lambda2 = F43 / kSqrt3;
  s.f = s.lambda1 + s.lambda2;
  return s;
}

ResidualReport verify_shape_operator(const GluedMetric& gm, const SweepOptions& opt) {
  const double e = gm.eps().as_double();
  const auto grid = gm.guarded_grid(opt.a, opt.b, opt.n);
  std::vector<double> res(grid.size());
  std::vector<double> gap(grid.size());
  parallel_for(grid.size(), opt.workers, [&](std::size_t i) {
    const ShapeOperatorSample A = shape_operator(grid[i], gm);
    const double K = gauss_curvature(grid[i], gm);
    const double root = std::sqrt(e - K);
    const double r1 = std::abs(A.det() - (K - e));
    const double r2 = std::abs(A.f - 2.0 * root / kSqrt3);
    const double r3 = std::abs(A.lambda2 - A.lambda1 - 4.0 * root / kSqrt3);
    const double r4 = std::abs(A.lambda1 + root / kSqrt3) + std::abs(A.lambda2 - std::sqrt(3.0 * (e - K)));
    res[i] = std::max({r1, r2, r3, r4}) / std::max(1.0, std::abs(K));
    gap[i] = A.lambda2 - A.lambda1;
  });
  auto rep = summarize_residuals("shape_operator", sweep_spec(opt, grid.size()), res, 1e-12, gm.guard_band());
  const double min_gap = gap.empty() ? 0.0 : *std::min_element(gap.begin(), gap.end());
  rep.extras.emplace_back("min_umbilicity_gap", min_gap);
  if (!(min_gap > 0.0)) rep.passed = false;
  return rep;
}

ResidualReport verify_biconservative_tangency(const GluedMetric& gm, const SweepOptions& opt) {
  const double c = 8.0 / (9.0 * kSqrt3);
  const double h = 1e-3 * gm.profile().block_scale();
  const auto grid = gm.guarded_grid(opt.a, opt.b, opt.n);
  std::vector<double> res(grid.size());
  std::vector<double> fd(grid.size());
  parallel_for(grid.size(), opt.workers, [&](std::size_t i) {
    const double rho = grid[i];
    const ProfileJet j = gm.profile().jet(rho);
    const ShapeOperatorSample A = shape_operator(rho, gm);
    const double df = c * std::cbrt(j.F) * j.dF;  // grad f = f' X1
    res[i] = std::abs(A.lambda1 * df + 0.5 * A.f * df) / std::max(1.0, std::abs(df));
    const double df_fd = numerics::central_derivative([&](double r) { return mean_curvature_f(r, gm); }, rho, h, 1, 3);
    const double dK = curvature_sample(rho, gm).dK_drho;
    fd[i] = std::abs(A.f * df_fd + (2.0 / 3.0) * dK) / std::max(1.0, std::abs(dK));
  });
  auto rep = summarize_residuals("biconservative_tangency", sweep_spec(opt, grid.size()), res, 1e-10,
                                 gm.guard_band());
  const double worst_fd = fd.empty() ? 0.0 : *std::max_element(fd.begin(), fd.end());
  rep.extras.emplace_back("ff_prime_fd_residual", worst_fd);
  if (!(worst_fd <= 1e-7)) rep.passed = false;
  return rep;
}

ResidualReport verify_codazzi(const GluedMetric& gm, const SweepOptions& opt) {
  const double block = gm.profile().block_scale();
  const auto grid = gm.guarded_grid(opt.a, opt.b, opt.n);
  std::vector<double> scalar(grid.size());
  std::vector<double> frame(grid.size());
  parallel_for(grid.size(), opt.workers, [&](std::size_t i) {
    const double rho = grid[i];
    const ProfileJet j = gm.profile().jet(rho);
    const ShapeOperatorSample A = shape_operator(rho, gm);
    const double w = -j.dF / j.F;
    const double dl2 = (4.0 / (3.0 * kSqrt3)) * std::cbrt(j.F) * j.dF;
    const double scale = std::max(1.0, std::abs(dl2));
    const double h = 1e-3 * std::min(block, 20.0 / std::max({std::abs(w), A.lambda2, 1.0}));
    scalar[i] = (dl2 - w * (A.lambda1 - A.lambda2)) / scale;
    // Frame form: (nabla_X1 A)X2 - (nabla_X2 A)X1 in (X1, X2) components, with the
    // connection taken from finite differences of g_thetatheta.
    auto gtt = [&](double r) { return gm.components(r)[2]; };
    const double g = gtt(rho);
    const double b = 0.5 * numerics::central_derivative(gtt, rho, h, 1, 3) / g;  // nabla_X2 X1 = b X2
    const double a = 0.0;  // nabla_X1 X2 = a X1; Gamma^rho_{rho theta} = 0 for this metric
    const double dl2_fd =
        numerics::central_derivative([&](double r) { return shape_operator(r, gm).lambda2; }, rho, h, 1, 3);
    const double c1 = a * (A.lambda2 - A.lambda1);
    const double c2 = dl2_fd - b * (A.lambda1 - A.lambda2);
    frame[i] = std::hypot(c1, c2) / scale;
  });
  auto rep = summarize_residuals("codazzi", sweep_spec(opt, grid.size()), scalar, 1e-7, gm.guard_band());
  double frame_max = 0.0;
  double agree = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    frame_max = std::max(frame_max, std::abs(frame[i]));
    agree = std::max(agree, std::abs(std::abs(frame[i]) - std::abs(scalar[i])));
  }
  rep.extras.emplace_back("frame_form_max_residual", frame_max);
  rep.extras.emplace_back("scalar_frame_agreement", agree);
  if (!(frame_max <= 1e-7) || !(agree <= 1e-9)) rep.passed = false;
  return rep;
}

std::vector<JunctionMeanCurvature> junction_mean_curvature(const GluedMetric& gm) {
  std::vector<JunctionMeanCurvature> out;
  std::vector<int> rs{-1};
  if (gm.profile().lattice().periodic()) rs.push_back(1);
  for (int r : rs) {
    JunctionMeanCurvature j;
    j.r = r;
    j.rho = gm.profile().lattice().lattice_point(r);
    const double F = gm.profile().junction_value(r);
    j.f2 = (4.0 / 27.0) * F * F * std::cbrt(F * F);
    j.admissible = j.f2 != 0.0 && std::abs(j.f2 - 4.0 / 3.0) > 1e-6;
    out.push_back(j);
  }
  return out;
}

FrameCoefficients frame_coefficients(double rho, const GluedMetric& gm) {
  const ProfileJet j = gm.profile().jet(rho);
  const double F43 = j.F * std::cbrt(j.F);
  return {-F43 / (3.0 * kSqrt3), F43 / kSqrt3, 1.0 / j.F, -j.dF / j.F};
}

FrameState frame_ode_rhs(const FrameState& s, FrameDirection dir, const FrameCoefficients& c,
                         const AmbientModel& model) {
  const double e = model.eps().as_double();
  FrameState d;
  for (int i = 0; i < 4; ++i) {
    if (dir == FrameDirection::Rho) {
      d.Phi[i] = s.E1[i];
      d.E1[i] = c.lambda1 * s.N[i] - e * s.Phi[i];
      d.E2[i] = 0.0;
      d.N[i] = -c.lambda1 * s.E1[i];
    } else {
      d.Phi[i] = c.Gamma * s.E2[i];
      d.E1[i] = c.Gamma * c.omega * s.E2[i];
      d.E2[i] = c.Gamma * (-c.omega * s.E1[i] + c.lambda2 * s.N[i] - e * s.Phi[i]);
      d.N[i] = -c.Gamma * c.lambda2 * s.E2[i];
    }
  }
  return d;
}

FrameState frame_ode_rhs(const FrameState& s, FrameDirection dir, double rho, const GluedMetric& gm,
                         const AmbientModel& model) {
  return frame_ode_rhs(s, dir, frame_coefficients(rho, gm), model);
}

ImmersionGridSpec default_grid_spec(const GluedMetric& gm, int n_rho, int n_theta) {
  ImmersionGridSpec s;
  const auto& lat = gm.profile().lattice();
  if (lat.periodic()) {
    const double W = lat.block_width();
    s.rho_min = lat.rho_minus() - W;
    s.rho_max = lat.rho_minus() + 3.0 * W;
  } else {
    const auto [a, b] = gm.default_window();
    s.rho_min = a;
    s.rho_max = b;
  }
  s.n_rho = n_rho;
  s.n_theta = n_theta;
  return s;
}

ImmersionGrid integrate_immersion(const GluedMetric& gm, const AmbientModel& model, const ImmersionGridSpec& spec) {
  if (!(model.eps() == gm.eps())) throw DomainError("integrate_immersion: ambient model does not match eps");
  if (spec.n_rho < 2 || spec.n_theta < 2 || !(spec.rho_max > spec.rho_min) || !(spec.theta_max > spec.theta_min))
    throw DomainError("integrate_immersion: grid needs n >= 2 and increasing bounds in rho and theta");
  ImmersionGrid g;
  g.eps = gm.eps();
  g.spec = spec;
  for (int i = 0; i < spec.n_rho; ++i)
    g.rho.push_back(i == spec.n_rho - 1 ? spec.rho_max
                                        : spec.rho_min + (spec.rho_max - spec.rho_min) * i / (spec.n_rho - 1));
  for (int j = 0; j < spec.n_theta; ++j)
    g.theta.push_back(j == spec.n_theta - 1
                          ? spec.theta_max
                          : spec.theta_min + (spec.theta_max - spec.theta_min) * j / (spec.n_theta - 1));
  const auto nr = static_cast<std::size_t>(spec.n_rho);
  const auto nt = static_cast<std::size_t>(spec.n_theta);
  g.frames.resize(nr * nt);
  g.drift.assign(nr * nt, 0.0);

  const double hmax = spec.rho_step > 0.0 ? spec.rho_step : 2.5e-3 * gm.profile().block_scale();
  const RhoPlan plan = plan_rho(gm, g.rho, hmax);
  const std::size_t i0 = (nr - 1) / 2;
  const std::size_t j0 = (nt - 1) / 2;
  auto coef_at = [&](std::size_t i) { return i + 1 < nr ? plan.coef[i].front() : plan.coef[nr - 2].back(); };

  // Both lines start at the base node and run outwards in each direction, so
  // that ambient coordinates stay as small as the window allows.
  auto rho_line = [&](const FrameState& s0, double d0, auto&& emit) {
    emit(i0, s0, d0);
    FramePath up(model, spec.correct_every);
    up.set_drift(d0);
    FrameState s = s0;
    for (std::size_t i = i0; i + 1 < nr; ++i) {
      s = run_rho_interval(up, s, plan, i, g.rho[i + 1] - g.rho[i]);
      emit(i + 1, s, up.drift());
    }
    FramePath down(model, spec.correct_every);
    down.set_drift(d0);
    s = s0;
    for (std::size_t i = i0; i > 0; --i) {
      s = run_rho_interval_back(down, s, plan, i - 1, g.rho[i] - g.rho[i - 1]);
      emit(i - 1, s, down.drift());
    }
  };
  auto theta_line = [&](const FrameState& s0, double d0, const FrameCoefficients& c, auto&& emit) {
    emit(j0, s0, d0);
    FramePath up(model, spec.correct_every);
    up.set_drift(d0);
    FrameState s = s0;
    for (std::size_t j = j0; j + 1 < nt; ++j) {
      s = run_theta_interval(up, s, c, g.theta[j + 1] - g.theta[j], spec.theta_rate_step);
      emit(j + 1, s, up.drift());
    }
    FramePath down(model, spec.correct_every);
    down.set_drift(d0);
    s = s0;
    for (std::size_t j = j0; j > 0; --j) {
      s = run_theta_interval(down, s, c, g.theta[j - 1] - g.theta[j], spec.theta_rate_step);
      emit(j - 1, s, down.drift());
    }
  };

  const FrameState start = model.initial_frame();
  if (!spec.theta_spine_first) {
    std::vector<FrameState> spine(nr);
    std::vector<double> spine_drift(nr, 0.0);
    rho_line(start, 0.0, [&](std::size_t i, const FrameState& s, double d) {
      spine[i] = s;
      spine_drift[i] = d;
    });
    parallel_for(nr, spec.workers, [&](std::size_t i) {
      theta_line(spine[i], spine_drift[i], coef_at(i), [&](std::size_t j, const FrameState& s, double d) {
        g.frames[i * nt + j] = s;
        g.drift[i * nt + j] = d;
      });
    });
  } else {
    std::vector<FrameState> spine(nt);
    std::vector<double> spine_drift(nt, 0.0);
    theta_line(start, 0.0, coef_at(i0), [&](std::size_t j, const FrameState& s, double d) {
      spine[j] = s;
      spine_drift[j] = d;
    });
    parallel_for(nt, spec.workers, [&](std::size_t j) {
      rho_line(spine[j], spine_drift[j], [&](std::size_t i, const FrameState& s, double d) {
        g.frames[i * nt + j] = s;
        g.drift[i * nt + j] = d;
      });
    });
  }
  g.max_drift = *std::max_element(g.drift.begin(), g.drift.end());
  return g;
}

ResidualReport verify_induced_metric(const ImmersionGrid& grid, const GluedMetric& gm) {
  const AmbientModel model(grid.eps);
  std::vector<double> res;
  res.reserve(grid.frames.size());
  for (const auto& f : grid.frames) res.push_back(model.gram_drift(f));
  double fd = 0.0;
  const int nr = grid.n_rho();
  const int nt = grid.n_theta();
  if (nr >= 7 && nt >= 7) {
    const double hr = grid.rho[1] - grid.rho[0];
    const double ht = grid.theta[1] - grid.theta[0];
    for (int i = 3; i < nr - 3; ++i) {
      const double G = 1.0 / gm.profile().F(grid.rho[static_cast<std::size_t>(i)]);
      for (int j = 3; j < nt - 3; ++j) {
        const FrameState& s = grid.at(i, j);
        const Vec4 pr = d7([&](int k) { return grid.at(i + k, j).Phi; }, hr);
        const Vec4 pt = d7([&](int k) { return grid.at(i, j + k).Phi; }, ht);
        Vec4 ge2 = s.E2;
        for (double& v : ge2) v *= G;
        fd = std::max({fd, vnorm(vdiff(pr, s.E1)), vnorm(vdiff(pt, ge2)) / std::max(1.0, G)});
      }
    }
  }
  auto rep = summarize_residuals("induced_metric", grid_spec(grid), res, 1e-7);
  rep.extras.emplace_back("fd_tangent_max_deviation", fd);
  rep.extras.emplace_back("max_pre_correction_drift", grid.max_drift);
  return rep;
}

ResidualReport verify_ambient_constraint(const ImmersionGrid& grid) {
  const AmbientModel model(grid.eps);
  std::vector<double> res;
  res.reserve(grid.frames.size());
  for (const auto& f : grid.frames) res.push_back(model.constraint_residual(f.Phi));
  return summarize_residuals("ambient_constraint_" + model.name(), grid_spec(grid), res, 1e-8);
}

namespace {

template <class Fn>
ResidualReport second_form_sweep(const ImmersionGrid& grid, const GluedMetric& gm, const std::string& name,
                                 double threshold, Fn&& fn) {
  const AmbientModel model(grid.eps);
  const int nr = grid.n_rho();
  const int nt = grid.n_theta();
  if (nr < 2 * kHalf + 1 || nt < 2 * kHalf + 1)
    throw DomainError(name + ": grid needs at least 11 nodes in each direction");
  std::vector<double> res;
  for (int i = kHalf; i < nr - kHalf; ++i)
    for (int j = kHalf; j < nt - kHalf; ++j)
      res.push_back(fn(grid.rho[static_cast<std::size_t>(i)], second_form_at(grid, gm, model, i, j)));
  auto rep = summarize_residuals(name, grid_spec(grid) + ", 11-point differences at interior nodes", res, threshold,
                                 0.0, kNormalConvention);
  return rep;
}

}  // namespace

ResidualReport verify_extrinsic_mean_curvature(const ImmersionGrid& grid, const GluedMetric& gm) {
  return second_form_sweep(grid, gm, "extrinsic_mean_curvature", 1e-7, [&](double rho, const SecondForm& h) {
    const double f = mean_curvature_f(rho, gm);
    return (h.h11 + h.h22 - f) / std::max(1.0, std::abs(f));
  });
}

ResidualReport verify_gauss_equation(const ImmersionGrid& grid, const GluedMetric& gm) {
  const double e = gm.eps().as_double();
  return second_form_sweep(grid, gm, "gauss_equation", 1e-6, [&](double rho, const SecondForm& h) {
    const double K = gauss_curvature(rho, gm);
    return (e + h.h11 * h.h22 - h.h12 * h.h12 - K) / std::max(1.0, std::abs(K));
  });
}

double max_position_difference(const ImmersionGrid& a, const ImmersionGrid& b) {
  if (a.frames.size() != b.frames.size()) throw DomainError("max_position_difference: grids differ in shape");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.frames.size(); ++k) worst = std::max(worst, vnorm(vdiff(a.frames[k].Phi, b.frames[k].Phi)));
  return worst;
}

}  // namespace bicons
