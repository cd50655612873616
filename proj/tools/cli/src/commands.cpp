#include "bicons_cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "bicons/errors.hpp"
#include "bicons/geodesic.hpp"
#include "bicons/geometry.hpp"
#include "bicons/immersion.hpp"
#include "bicons/mesh.hpp"
#include "bicons/oracle.hpp"
#include "json.hpp"

namespace bicons::cli {

namespace {

using nlohmann::json;

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

GluedMetric make_metric(const RunConfig& cfg) {
  ProfileParams p;
  p.eps = SpaceFormSign(cfg.eps);
  p.C = cfg.C;
  p.xi00 = cfg.xi00;
  return GluedMetric(GluedProfile(ProfileSolution(p)));
}

/// Writes to cfg.out when set, otherwise to `out`.
void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw ExportError("cannot open " + cfg.out + " for writing");
  f << text;
}

json residual_json(const ResidualReport& r) { return json::parse(to_json(r, -1)); }

std::pair<double, double> rho_window(const RunConfig& cfg, const GluedMetric& gm) {
  if (cfg.window) return {(*cfg.window)[0], (*cfg.window)[1]};
  return gm.default_window();
}

std::string sample_csv(const GluedMetric& gm, double a, double b, int n) {
  std::string s = "rho,F,Gamma,K,f\n";
  for (int i = 0; i < n; ++i) {
    const double rho = i == n - 1 ? b : a + (b - a) * i / (n - 1);
    const double F = gm.profile().F(rho);
    s += g17(rho) + "," + g17(F) + "," + g17(1.0 / F) + "," + g17(gauss_curvature(rho, gm)) + "," +
         g17(mean_curvature_f(rho, gm)) + "\n";
  }
  return s;
}

json junction_json(const GluedMetric& gm, double a, double b) {
  json j;
  json lattice = json::array();
  for (const auto& [r, rho] : gm.profile().lattice().junctions_in(a, b))
    lattice.push_back({{"r", r}, {"rho", rho}, {"F", gm.profile().junction_value(r)}});
  j["junctions"] = lattice;
  const auto rep = junction_smoothness_report(gm.profile(), a, b);
  j["max_mismatch"] = rep.max_mismatch;
  j["max_analytic_error"] = rep.max_analytic_error;
  j["thresholds"] = rep.thresholds;
  j["passed"] = rep.passed;
  return j;
}

ResidualReport scalar_report(const std::string& name, const std::string& grid, double value, double threshold) {
  return summarize_residuals(name, grid, std::vector<double>{value}, threshold);
}

}  // namespace

void apply_threshold(ResidualReport& rep, double threshold) {
  const bool failed_by_extras = !rep.passed && rep.max_residual <= rep.threshold && std::isfinite(rep.max_residual);
  rep.threshold = threshold;
  rep.passed = !failed_by_extras && rep.samples > 0 && std::isfinite(rep.max_residual) && rep.max_residual <= threshold;
}

VerificationReport build_verification_report(const GluedMetric& gm, const RunConfig& cfg) {
  VerificationReport vr;
  vr.eps = gm.eps();
  vr.C = gm.C();
  vr.laplacian_convention = kLaplacianConvention;
  vr.normal_convention = kNormalConvention;
  const auto [a, b] = rho_window(cfg, gm);
  const SweepOptions sw{a, b, 1000, cfg.workers};
  auto& R = vr.residuals;
  R.push_back(verify_curvature_ode(gm, sw));
  R.push_back(verify_laplace_identity(gm, sw));
  R.push_back(verify_bicons_pde(gm, sw));
  R.push_back(verify_gamma_curvature(gm, sw));
  R.push_back(verify_connection_coefficient(gm, sw));
  R.push_back(verify_frame_relations(gm, sw));
  R.push_back(verify_completeness_bound(gm, sw));
  R.push_back(verify_first_integral(gm, sw));
  const auto [ia, ib] = isothermal_window(gm);
  R.push_back(verify_isothermal_form(gm, ia, ib));
  R.push_back(verify_shape_operator(gm, sw));
  R.push_back(verify_biconservative_tangency(gm, sw));
  R.push_back(verify_codazzi(gm, sw));

  const auto js = junction_smoothness_report(gm.profile(), a, b);
  const std::string jgrid = "one-sided step sweep at each junction in [" + g17(a) + ", " + g17(b) + "]";
  for (int k = 0; k < 3; ++k) {
    auto r = scalar_report("junction_smoothness_order_" + std::to_string(k + 1), jgrid,
                           js.max_mismatch[static_cast<std::size_t>(k)], js.thresholds[static_cast<std::size_t>(k)]);
    r.extras.emplace_back("max_analytic_error", js.max_analytic_error[static_cast<std::size_t>(k)]);
    R.push_back(r);
  }
  {
    ResidualReport r = scalar_report("junction_mean_curvature_exclusion", "junction lines", 0.0, 1.0);
    for (const auto& j : junction_mean_curvature(gm)) {
      r.extras.emplace_back("f2_r" + std::to_string(j.r), j.f2);
      if (!j.admissible) r.passed = false;
    }
    R.push_back(r);
  }
  if (cfg.geodesics > 0) {
    const auto p = probe_completeness(gm, cfg.geodesics, 100.0, cfg.seed, cfg.workers);
    const std::string g = std::to_string(cfg.geodesics) + " random unit-speed geodesics, arclength 100, seed " +
                          std::to_string(cfg.seed);
    auto speed = scalar_report("geodesic_speed_drift", g, p.max_speed_drift, 1e-8);
    auto clair = scalar_report("geodesic_clairaut_drift", g, p.max_clairaut_drift, 1e-8);
    speed.extras.emplace_back("failures", p.failures);
    if (p.failures > 0) speed.passed = clair.passed = false;
    R.push_back(speed);
    R.push_back(clair);
    R.push_back(scalar_report("junction_line_geodesic", "rho = rho_{0,-1}, arclength 50",
                              junction_line_deviation(gm, -1, 50.0), 1e-8));
  }
  for (auto& r : R) {
    const auto it = cfg.tol.find(r.identity);
    if (it != cfg.tol.end()) apply_threshold(r, it->second);
  }
  return vr;
}

int cmd_roots(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const SpaceFormSign eps(cfg.eps);
  const RootPair r = find_roots(eps, cfg.C);
  json j;
  j["eps"] = cfg.eps;
  j["C"] = cfg.C;
  j["xi01"] = r.xi01;
  j["xi02"] = r.xi02;
  j["xi_star"] = r.xi_star ? json(*r.xi_star) : json(nullptr);
  std::string text;
  if (cfg.format != "json") {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-4s %-8s %-24s %-24s %-24s\n%-4d %-8g %-24.17g %-24.17g ", "eps", "C", "xi01",
                  "xi02", "xi_star", cfg.eps, cfg.C, r.xi01, r.xi02);
    text += buf;
    text += r.xi_star ? g17(*r.xi_star) : std::string("-");
    text += "\n";
  }
  text += j.dump(2) + "\n";
  emit(cfg, out, text);
  return kOk;
}

int cmd_profile(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const GluedMetric gm = make_metric(cfg);
  const auto& lat = gm.profile().lattice();
  const double a = lat.rho_minus();
  const double b = lat.periodic() ? lat.lattice_point(1) : a + 2.0 * gm.profile().block_scale();
  if (cfg.format == "json") {
    emit(cfg, out, gm.profile().solution().table_csv());
    return kOk;
  }
  emit(cfg, out, sample_csv(gm, a, b, cfg.grid[0]));
  return kOk;
}

int cmd_glue(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const GluedMetric gm = make_metric(cfg);
  const auto [a, b] = rho_window(cfg, gm);
  emit(cfg, out, sample_csv(gm, a, b, cfg.grid[0]));
  const json report = junction_json(gm, a, b);
  (cfg.out.empty() ? err : out) << report.dump(2) << "\n";
  return report["passed"].get<bool>() ? kOk : kVerificationFailed;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const GluedMetric gm = make_metric(cfg);
  const VerificationReport vr = build_verification_report(gm, cfg);
  emit(cfg, out, vr.to_json(2) + "\n");
  if (vr.passed()) return kOk;
  for (const auto& name : vr.failing()) err << "FAIL " << name << "\n";
  return kVerificationFailed;
}

namespace {

struct ImmersionRun {
  ImmersionGrid grid;
  json report;
  bool passed = true;
};

ImmersionRun run_immersion(const RunConfig& cfg) {
  const GluedMetric gm = make_metric(cfg);
  const AmbientModel model{gm.eps()};
  ImmersionGridSpec spec = default_grid_spec(gm, cfg.grid[0], cfg.grid[1]);
  if (cfg.window) {
    spec.rho_min = (*cfg.window)[0];
    spec.rho_max = (*cfg.window)[1];
    spec.theta_min = (*cfg.window)[2];
    spec.theta_max = (*cfg.window)[3];
  }
  spec.workers = cfg.workers;
  ImmersionRun run{integrate_immersion(gm, model, spec), json::object(), true};
  std::vector<ResidualReport> reps{verify_induced_metric(run.grid, gm), verify_ambient_constraint(run.grid)};
  if (spec.n_rho >= 11 && spec.n_theta >= 11) {
    reps.push_back(verify_extrinsic_mean_curvature(run.grid, gm));
    reps.push_back(verify_gauss_equation(run.grid, gm));
  }
  json arr = json::array();
  for (auto& r : reps) {
    const auto it = cfg.tol.find(r.identity);
    if (it != cfg.tol.end()) apply_threshold(r, it->second);
    run.passed = run.passed && r.passed;
    arr.push_back(residual_json(r));
  }
  run.report["eps"] = cfg.eps;
  run.report["C"] = cfg.C;
  run.report["ambient"] = model.name();
  run.report["normal_convention"] = kNormalConvention;
  run.report["grid"] = {{"n_rho", spec.n_rho},
                        {"n_theta", spec.n_theta},
                        {"rho", {spec.rho_min, spec.rho_max}},
                        {"theta", {spec.theta_min, spec.theta_max}}};
  run.report["max_pre_correction_drift"] = run.grid.max_drift;
  run.report["residuals"] = arr;
  if (gm.eps().value() == 0) {
    const AlignmentReport al = compare_to_oracle(run.grid, gm);
    run.report["oracle_alignment"] = json::parse(al.to_json(-1));
    run.passed = run.passed && al.passed;
  }
  run.report["passed"] = run.passed;
  return run;
}

}  // namespace

int cmd_immerse(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ImmersionRun run = run_immersion(cfg);
  if (cfg.format == "csv") {
    emit(cfg, out, csv_string(run.grid));
    (cfg.out.empty() ? err : out) << run.report.dump(2) << "\n";
  } else {
    emit(cfg, out, run.report.dump(2) + "\n");
  }
  return run.passed ? kOk : kVerificationFailed;
}

int cmd_mesh(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (cfg.out.empty()) throw ConfigError("mesh requires --out");
  const ImmersionRun run = run_immersion(cfg);
  if (cfg.format == "csv")
    write_csv(run.grid, cfg.out);
  else if (cfg.format == "json")
    throw ConfigError("mesh writes obj or csv; use immerse for a JSON report");
  else
    write_obj(run.grid, cfg.out);
  out << run.report.dump(2) << "\n";
  return run.passed ? kOk : kVerificationFailed;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  // --tol.NAME VALUE and --tol.NAME=VALUE are collected before CLI11 sees the line.
  std::vector<std::string> args;
  std::map<std::string, double> tol;
  try {
    for (int i = 1; i < argc; ++i) {
      std::string a = argv[i];
      if (a.rfind("--tol.", 0) != 0) {
        args.push_back(a);
        continue;
      }
      std::string name = a.substr(6);
      std::string value;
      const auto eq = name.find('=');
      if (eq != std::string::npos) {
        value = name.substr(eq + 1);
        name = name.substr(0, eq);
      } else if (i + 1 < argc) {
        value = argv[++i];
      }
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(value, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (name.empty() || used == 0 || used != value.size()) throw ConfigError("bad tolerance override '" + a + "'");
      tol[name] = v;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidParameters;
  }

  CLI::App app{"Complete non-CMC biconservative surfaces in R^3, S^3 and H^3"};
  app.require_subcommand(1);
  std::string config_path;
  int eps = 1;
  double C = 3.0;
  double xi00 = 0.0;
  std::vector<double> window;
  std::vector<int> grid;
  std::string outp;
  std::string format;
  int workers = 1;
  int geodesics = 10;
  std::uint64_t seed = 0;
  auto* o_config = app.add_option("--config", config_path, "JSON run configuration; flags override it");
  auto* o_eps = app.add_option("--eps", eps, "Space form sign: -1, 0 or 1");
  auto* o_C = app.add_option("--C", C, "Profile constant C");
  auto* o_xi00 = app.add_option("--xi00", xi00, "Base point of the profile integral");
  auto* o_window = app.add_option("--window", window, "rho_min rho_max [theta_min theta_max]")->expected(2, 4);
  auto* o_grid = app.add_option("--grid", grid, "n_rho [n_theta]")->expected(1, 2);
  auto* o_out = app.add_option("--out", outp, "Output file");
  auto* o_format = app.add_option("--format", format, "obj, csv or json");
  auto* o_workers = app.add_option("--workers", workers, "Worker threads for sweeps and fibers");
  auto* o_geo = app.add_option("--geodesics", geodesics, "Random geodesics in verify");
  auto* o_seed = app.add_option("--seed", seed, "Seed for random geodesic starts");
  app.fallthrough();
  CLI::App* sub_roots = app.add_subcommand("roots", "Roots xi01 < xi02 of the potential");
  CLI::App* sub_profile = app.add_subcommand("profile", "Samples (rho, F, Gamma, K, f) on one block");
  CLI::App* sub_glue = app.add_subcommand("glue", "Glued profile samples and junction audit");
  CLI::App* sub_verify = app.add_subcommand("verify", "All identity residuals as a JSON report");
  CLI::App* sub_immerse = app.add_subcommand("immerse", "Frame integration of the immersion");
  CLI::App* sub_mesh = app.add_subcommand("mesh", "Immersion exported as OBJ or CSV");

  std::vector<const char*> cargv{argv[0]};
  for (const auto& a : args) cargv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidParameters;
  }

  try {
    RunConfig cfg;
    if (*o_config) {
      std::ifstream f(config_path);
      if (!f) throw ConfigError("cannot read config " + config_path);
      std::stringstream ss;
      ss << f.rdbuf();
      cfg = RunConfig::from_json(ss.str());
    }
    if (*o_eps) cfg.eps = eps;
    if (*o_C) cfg.C = C;
    if (*o_xi00) cfg.xi00 = xi00;
    if (*o_window) {
      std::array<double, 4> w{window[0], window[1], 0.0, 2.0 * std::numbers::pi};
      if (window.size() == 4) {
        w[2] = window[2];
        w[3] = window[3];
      } else if (window.size() != 2) {
        throw ConfigError("--window takes 2 or 4 values");
      }
      cfg.window = w;
    }
    if (*o_grid) {
      cfg.grid[0] = grid[0];
      if (grid.size() > 1) cfg.grid[1] = grid[1];
    }
    if (*o_out) cfg.out = outp;
    if (*o_format) cfg.format = format;
    if (*o_workers) cfg.workers = workers;
    if (*o_geo) cfg.geodesics = geodesics;
    if (*o_seed) cfg.seed = seed;
    for (const auto& [k, v] : tol) cfg.tol[k] = v;
    cfg.validate();

    if (*sub_roots) return cmd_roots(cfg, out, err);
    if (*sub_profile) return cmd_profile(cfg, out, err);
    if (*sub_glue) return cmd_glue(cfg, out, err);
    if (*sub_verify) return cmd_verify(cfg, out, err);
    if (*sub_immerse) return cmd_immerse(cfg, out, err);
    if (*sub_mesh) return cmd_mesh(cfg, out, err);
    return kInvalidParameters;
  } catch (const InadmissibleParameters& e) {
    err << "error: inadmissible parameters: " << e.what() << "\n";
    return kInvalidParameters;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidParameters;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidParameters;
  } catch (const NotApplicable& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidParameters;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const ExportError& e) {
    err << "export failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  }
}

}  // namespace bicons::cli
