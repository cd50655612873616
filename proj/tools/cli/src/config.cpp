#include "bicons_cli/config.hpp"

#include <cmath>

#include "json.hpp"

namespace bicons::cli {

void RunConfig::validate() const {
  if (eps < -1 || eps > 1) throw ConfigError("eps must be -1, 0 or 1");
  if (!std::isfinite(C)) throw ConfigError("C must be finite");
  if (window) {
    const auto& w = *window;
    for (double v : w)
      if (!std::isfinite(v)) throw ConfigError("window bounds must be finite");
    if (!(w[1] > w[0]) || !(w[3] > w[2])) throw ConfigError("window must satisfy rho_min < rho_max and theta_min < theta_max");
  }
  if (grid[0] < 2 || grid[1] < 2) throw ConfigError("grid must be at least 2x2");
  for (const auto& [k, v] : tol)
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("tolerance '" + k + "' must be positive");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (geodesics < 0) throw ConfigError("geodesics must be >= 0");
  if (!format.empty() && format != "obj" && format != "csv" && format != "json")
    throw ConfigError("format must be one of obj, csv, json");
}

std::string RunConfig::to_json(int indent) const {
  nlohmann::json j;
  j["eps"] = eps;
  j["C"] = C;
  if (xi00) j["xi00"] = *xi00;
  if (window) j["window"] = *window;
  j["grid"] = grid;
  j["tol"] = tol;
  j["out"] = out;
  j["format"] = format;
  j["workers"] = workers;
  j["geodesics"] = geodesics;
  j["seed"] = seed;
  return j.dump(indent);
}

RunConfig RunConfig::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig c;
  try {
    for (const auto& [key, val] : j.items()) {
      if (key == "eps") c.eps = val.get<int>();
      else if (key == "C") c.C = val.get<double>();
      else if (key == "xi00") c.xi00 = val.get<double>();
      else if (key == "window") c.window = val.get<std::array<double, 4>>();
      else if (key == "grid") c.grid = val.get<std::array<int, 2>>();
      else if (key == "tol") c.tol = val.get<std::map<std::string, double>>();
      else if (key == "out") c.out = val.get<std::string>();
      else if (key == "format") c.format = val.get<std::string>();
      else if (key == "workers") c.workers = val.get<int>();
      else if (key == "geodesics") c.geodesics = val.get<int>();
      else if (key == "seed") c.seed = val.get<std::uint64_t>();
      else throw ConfigError("unknown config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config has a value of the wrong type: ") + e.what());
  }
  return c;
}

}  // namespace bicons::cli
