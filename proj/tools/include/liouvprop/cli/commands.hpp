#pragma once

#include <exception>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "liouvprop/cli/report.hpp"

namespace liouvprop::cli {

enum ExitCode { kPass = 0, kCheckFailure = 2, kUnsupported = 3, kInputError = 4 };

/// Tolerance overrides by check name ("*" for all) and a sample count for
/// one-dimensional grids. Matching checks are re-run.
struct Overrides {
  std::map<std::string, double> tolerances;
  std::optional<int> points;

  bool empty() const { return tolerances.empty() && !points; }
};

void apply_overrides(Report& r, const Overrides& o);

/// 3 when the Kovacic run of a solve is out of scope, else 0 or 2 by checks.
int exit_code(const Report& r);
/// Maps library exceptions to exit codes.
int exit_code(const std::exception& e);

struct VerifyOutcome {
  Report report;
  std::vector<std::string> warnings;
  /// Checks whose re-run verdict differs from the recorded one.
  std::vector<std::string> changed;
  int exit_code = kPass;
};

/// Re-runs every recorded check on the recorded fields.
VerifyOutcome verify_report(const nlohmann::json& j);

std::string render(const Report& r, const std::string& format);

}  // namespace liouvprop::cli
