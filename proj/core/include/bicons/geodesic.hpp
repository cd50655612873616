#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bicons/geometry.hpp"
#include "bicons/numerics/ode.hpp"

namespace bicons {

/// Point and velocity on the glued surface; arclength is the curve parameter.
struct GeodesicState {
  double rho = 0.0;
  double theta = 0.0;
  double drho = 0.0;
  double dtheta = 0.0;
  double arclength = 0.0;
};

/// Unit-speed start at (rho, theta) making `angle` with d/drho:
/// drho = cos(angle), dtheta = sin(angle) / Gamma(rho).
GeodesicState unit_speed_state(const GluedMetric& gm, double rho, double theta, double angle);

struct GeodesicOptions {
  double rel_tol = 1e-10;
  /// Drift bound on speed and Clairaut quantity; one retry at `fallback_rel_tol` if exceeded.
  double drift_tol = 1e-8;
  double fallback_rel_tol = 1e-12;
  double max_step = 0.5;
};

struct GeodesicTrajectory {
  std::vector<numerics::OdeSample<4>> samples;  // y = (rho, theta, drho, dtheta)
  double speed_drift = 0.0;                     // max |g(v, v) - 1|
  double clairaut_drift = 0.0;                  // max |Gamma^2 dtheta - L0|
  double clairaut = 0.0;                        // L0
  double rel_tol_used = 0.0;
  std::size_t steps = 0;

  GeodesicState at(double s) const;
  GeodesicState back() const { return at(samples.back().t); }
};

/// Integrates rho'' = Gamma Gamma' theta'^2, theta'' = -2 (Gamma'/Gamma) rho' theta'
/// over arclength `length` with DOPRI5. NumericalFailure on step collapse;
/// DomainError if the start is not unit speed within 1e-12.
GeodesicTrajectory geodesic_integrate(const GeodesicState& start, double length, const GluedMetric& gm,
                                      const GeodesicOptions& opt = {});

struct CompletenessProbe {
  int count = 0;
  int failures = 0;
  double length = 0.0;
  double max_speed_drift = 0.0;
  double max_clairaut_drift = 0.0;
  int retightened = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> failure_messages;
  bool passed(double drift_tol = 1e-8) const {
    return failures == 0 && max_speed_drift <= drift_tol && max_clairaut_drift <= drift_tol;
  }
};

/// `count` unit-speed geodesics with rho uniform in the default window and
/// theta, angle uniform in [0, 2 pi), all integrated to `length`.
CompletenessProbe probe_completeness(const GluedMetric& gm, int count, double length, std::uint64_t seed,
                                     int workers = 1, const GeodesicOptions& opt = {});

/// Max |rho(s) - rho_{0,r}| along the geodesic leaving rho_{0,r} with velocity X2.
double junction_line_deviation(const GluedMetric& gm, int r, double length);

}  // namespace bicons
