#include "bicons/report.hpp"

#include <cmath>

#include "json.hpp"

namespace bicons {

namespace {

nlohmann::json residual_json(const ResidualReport& r) {
  nlohmann::json j;
  j["identity"] = r.identity;
  j["grid"] = r.grid_spec;
  j["max_residual"] = r.max_residual;
  j["rms_residual"] = r.rms_residual;
  j["samples"] = r.samples;
  j["guard_band"] = r.guard_band;
  j["sign_convention"] = r.sign_convention;
  j["threshold"] = r.threshold;
  j["passed"] = r.passed;
  nlohmann::json extras = nlohmann::json::object();
  for (const auto& [k, v] : r.extras) extras[k] = v;
  j["extras"] = extras;
  return j;
}

}  // namespace

ResidualReport summarize_residuals(std::string identity, std::string grid_spec, const std::vector<double>& residuals,
                                   double threshold, double guard_band, std::string sign_convention) {
  ResidualReport r;
  r.identity = std::move(identity);
  r.grid_spec = std::move(grid_spec);
  r.threshold = threshold;
  r.guard_band = guard_band;
  r.sign_convention = std::move(sign_convention);
  r.samples = residuals.size();
  double sq = 0.0;
  bool finite = true;
  for (double v : residuals) {
    const double a = std::abs(v);
    if (!std::isfinite(a)) finite = false;
    r.max_residual = std::max(r.max_residual, a);
    sq += a * a;
  }
  r.rms_residual = residuals.empty() ? 0.0 : std::sqrt(sq / static_cast<double>(residuals.size()));
  r.passed = finite && !residuals.empty() && r.max_residual <= threshold;
  return r;
}

bool VerificationReport::passed() const {
  for (const auto& r : residuals) {
    if (!r.passed) return false;
  }
  return true;
}

std::vector<std::string> VerificationReport::failing() const {
  std::vector<std::string> out;
  for (const auto& r : residuals) {
    if (!r.passed) out.push_back(r.identity);
  }
  return out;
}

std::string VerificationReport::to_json(int indent) const {
  nlohmann::json j;
  j["eps"] = eps.value();
  j["C"] = C;
  j["laplacian_convention"] = laplacian_convention;
  j["normal_convention"] = normal_convention;
  j["passed"] = passed();
  j["failing"] = failing();
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : residuals) arr.push_back(residual_json(r));
  j["residuals"] = arr;
  return j.dump(indent);
}

std::string to_json(const ResidualReport& r, int indent) { return residual_json(r).dump(indent); }

}  // namespace bicons
