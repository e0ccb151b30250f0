#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "liouvprop/cli/checks.hpp"

namespace liouvprop::cli {

/// Comparison of a printed formula with the computed one. The verdict is
/// "agrees" when the printed expression passes its residual oracle, and
/// "formula-discrepant" otherwise; both expressions are published.
struct Annotation {
  std::string name;
  std::string printed;
  std::string computed;
  bool structural_match = false;
  double max_residual = 0;
  double tolerance = 0;
  std::string verdict;
  std::string note;
};

struct Report {
  std::string command;
  std::string target;
  std::map<std::string, std::string> parameters;
  std::optional<propagator::QuadraticHamiltonian> hamiltonian;
  std::optional<transforms::GeneralODE2> equation;
  /// mu0, mu1, alpha0, beta0, gamma0, green and any extra named expressions.
  std::map<std::string, Expr> fields;
  liouville::DomainWindow window;
  std::vector<CheckResult> checks;
  std::vector<Annotation> annotations;
  nlohmann::ordered_json kovacic;
  std::vector<std::string> notes;

  bool all_pass() const;
  CheckContext context() const;
  const CheckResult* check(const std::string& name) const;
  const Annotation* annotation(const std::string& name) const;
};

nlohmann::ordered_json to_json(const Report& r);
/// Throws SchemaMismatch when required keys are missing or malformed.
Report report_from_json(const nlohmann::json& j);
std::string to_text(const Report& r);

/// Parses canonical expression text, including the integral(f, s, a, upper)
/// form that the expression grammar itself does not accept.
Expr parse_report_expression(const std::string& text);

}  // namespace liouvprop::cli
