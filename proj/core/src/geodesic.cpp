#include "bicons/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "bicons/errors.hpp"
#include "bicons/parallel.hpp"

namespace bicons {

namespace {

using State = numerics::OdeState<4>;

struct Drift {
  double speed = 0.0;
  double clairaut = 0.0;
};

Drift measure(const std::vector<numerics::OdeSample<4>>& samples, const GluedMetric& gm, double L0) {
  Drift d;
  for (const auto& s : samples) {
    const double G = 1.0 / gm.profile().F(s.y[0]);
    const double v2 = s.y[2] * s.y[2] + G * G * s.y[3] * s.y[3];
    d.speed = std::max(d.speed, std::abs(v2 - 1.0));
    d.clairaut = std::max(d.clairaut, std::abs(G * G * s.y[3] - L0));
  }
  return d;
}

}  // namespace

GeodesicState unit_speed_state(const GluedMetric& gm, double rho, double theta, double angle) {
  const double G = 1.0 / gm.profile().F(rho);
  return {rho, theta, std::cos(angle), std::sin(angle) / G, 0.0};
}

GeodesicState GeodesicTrajectory::at(double s) const {
  if (samples.empty()) throw DomainError("GeodesicTrajectory::at: empty trajectory");
  if (s <= samples.front().t) {
    const auto& y = samples.front().y;
    return {y[0], y[1], y[2], y[3], samples.front().t};
  }
  auto it = std::lower_bound(samples.begin(), samples.end(), s,
                             [](const numerics::OdeSample<4>& a, double t) { return a.t < t; });
  if (it == samples.end()) {
    const auto& y = samples.back().y;
    return {y[0], y[1], y[2], y[3], samples.back().t};
  }
  const auto y = numerics::hermite_interpolate(*(it - 1), *it, s);
  return {y[0], y[1], y[2], y[3], s};
}

GeodesicTrajectory geodesic_integrate(const GeodesicState& start, double length, const GluedMetric& gm,
                                      const GeodesicOptions& opt) {
  if (!(length > 0.0) || !std::isfinite(length)) throw DomainError("geodesic_integrate: length must be positive");
  const double G0 = 1.0 / gm.profile().F(start.rho);
  const double v2 = start.drho * start.drho + G0 * G0 * start.dtheta * start.dtheta;
  if (std::abs(v2 - 1.0) > 1e-12) throw DomainError("geodesic_integrate: start is not unit speed");
  const double L0 = G0 * G0 * start.dtheta;

  auto rhs = [&](double, const State& y) {
    const auto g = gm.gamma_jet(y[0]);
    return State{y[2], y[3], g.Gamma * g.dGamma * y[3] * y[3], -2.0 * (g.dGamma / g.Gamma) * y[2] * y[3]};
  };
  const State y0{start.rho, start.theta, start.drho, start.dtheta};

  GeodesicTrajectory tr;
  tr.clairaut = L0;
  for (double rtol : {opt.rel_tol, opt.fallback_rel_tol}) {
    numerics::AdaptiveOptions ao;
    ao.rel_tol = rtol;
    ao.abs_tol = 1e-2 * rtol;
    // theta' may be tiny where Gamma is large; relative control keeps Clairaut accurate there.
    ao.abs_tol_components = {1e-2 * rtol, 1e-2 * rtol, 1e-2 * rtol, 0.0};
    ao.max_step = opt.max_step;
    tr.samples = numerics::integrate_dopri5<4>(rhs, start.arclength, y0, start.arclength + length, ao);
    const Drift d = measure(tr.samples, gm, L0);
    tr.speed_drift = d.speed;
    tr.clairaut_drift = d.clairaut;
    tr.rel_tol_used = rtol;
    tr.steps = tr.samples.size() - 1;
    if (d.speed <= opt.drift_tol && d.clairaut <= opt.drift_tol) break;
    if (rtol <= opt.fallback_rel_tol) break;
  }
  return tr;
}

CompletenessProbe probe_completeness(const GluedMetric& gm, int count, double length, std::uint64_t seed, int workers,
                                     const GeodesicOptions& opt) {
  if (count < 0) throw DomainError("probe_completeness: negative count");
  const auto [a, b] = gm.default_window();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(a, b);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  std::vector<GeodesicState> starts;
  for (int i = 0; i < count; ++i) {
    const double rho = pos(rng);
    const double theta = ang(rng);
    const double angle = ang(rng);
    starts.push_back(unit_speed_state(gm, rho, theta, angle));
  }

  struct Outcome {
    bool ok = false;
    double speed = 0.0;
    double clairaut = 0.0;
    bool retightened = false;
    std::string error;
  };
  std::vector<Outcome> out(starts.size());
  parallel_for(starts.size(), workers, [&](std::size_t i) {
    try {
      const auto tr = geodesic_integrate(starts[i], length, gm, opt);
      out[i] = {std::abs(tr.samples.back().t - length) <= 1e-9 * length, tr.speed_drift, tr.clairaut_drift,
                tr.rel_tol_used != opt.rel_tol, {}};
      if (!out[i].ok) out[i].error = "did not reach requested arclength";
    } catch (const std::exception& e) {
      out[i].error = e.what();
    }
  });

  CompletenessProbe p;
  p.count = count;
  p.length = length;
  p.seed = seed;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!out[i].ok) {
      ++p.failures;
      p.failure_messages.push_back("start " + std::to_string(i) + ": " + out[i].error);
      continue;
    }
    p.max_speed_drift = std::max(p.max_speed_drift, out[i].speed);
    p.max_clairaut_drift = std::max(p.max_clairaut_drift, out[i].clairaut);
    p.retightened += out[i].retightened ? 1 : 0;
  }
  return p;
}

double junction_line_deviation(const GluedMetric& gm, int r, double length) {
  const double rho = gm.profile().lattice().lattice_point(r);
  const auto tr = geodesic_integrate(unit_speed_state(gm, rho, 0.0, std::numbers::pi / 2.0), length, gm);
  double dev = 0.0;
  for (const auto& s : tr.samples) dev = std::max(dev, std::abs(s.y[0] - rho));
  return dev;
}

}  // namespace bicons
