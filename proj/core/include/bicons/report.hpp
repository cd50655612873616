#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "bicons/space_form.hpp"

namespace bicons {

/// Max/RMS summary of one identity over a sample grid.
struct ResidualReport {
  std::string identity;
  std::string grid_spec;
  double max_residual = 0.0;
  double rms_residual = 0.0;
  std::size_t samples = 0;
  double guard_band = 0.0;
  std::string sign_convention;
  double threshold = 0.0;
  bool passed = false;
  /// Additional named diagnostics (informational unless stated otherwise).
  std::vector<std::pair<std::string, double>> extras;
};

/// Builds a report from per-sample residuals (absolute values are taken).
ResidualReport summarize_residuals(std::string identity, std::string grid_spec, const std::vector<double>& residuals,
                                   double threshold, double guard_band = 0.0, std::string sign_convention = {});

struct VerificationReport {
  SpaceFormSign eps = SpaceFormSign::spherical();
  double C = 0.0;
  std::string laplacian_convention;
  std::string normal_convention;
  std::vector<ResidualReport> residuals;

  bool passed() const;
  /// Names of identities above threshold.
  std::vector<std::string> failing() const;
  std::string to_json(int indent = 2) const;
};

std::string to_json(const ResidualReport& r, int indent = 2);

}  // namespace bicons
