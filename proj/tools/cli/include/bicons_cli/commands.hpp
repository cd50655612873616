#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bicons/report.hpp"
#include "bicons_cli/config.hpp"

namespace bicons {
class GluedMetric;
}

namespace bicons::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kInvalidParameters = 2,
  kNumericalFailure = 3,
};

int cmd_roots(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_profile(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_glue(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_immerse(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_mesh(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Every intrinsic and extrinsic identity check for one parameter set, with
/// threshold overrides from cfg.tol applied.
VerificationReport build_verification_report(const GluedMetric& gm, const RunConfig& cfg);
/// Replaces the threshold of `rep` and re-evaluates it; failures flagged by
/// extras stay failures.
void apply_threshold(ResidualReport& rep, double threshold);

/// Full command line (argv[0] included). Never throws; returns an ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bicons::cli
