#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace bicons::cli {

/// Bad flag values, malformed config files, inconsistent windows.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  int eps = 1;
  double C = 3.0;
  std::optional<double> xi00;
  /// rho_min, rho_max, theta_min, theta_max; unset means the per-command default.
  std::optional<std::array<double, 4>> window;
  std::array<int, 2> grid{201, 64};
  /// Threshold overrides keyed by identity name (--tol.NAME).
  std::map<std::string, double> tol;
  std::string out;
  std::string format;
  int workers = 1;
  /// Random geodesics in `verify` (arclength 100 each).
  int geodesics = 10;
  std::uint64_t seed = 20261019;

  /// ConfigError on a non-finite window, grid below 2x2, non-positive tolerance, ...
  void validate() const;
  std::string to_json(int indent = 2) const;
  static RunConfig from_json(const std::string& text);
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

}  // namespace bicons::cli
