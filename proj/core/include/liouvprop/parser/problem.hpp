#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "liouvprop/algebra/numbers.hpp"
#include "liouvprop/parser/ast.hpp"

namespace liouvprop::parser {

enum class ProblemKind { ReducedOde, GeneralOde, RiccatiGeneral, Hamiltonian, Characteristic };

std::string to_string(ProblemKind k);
std::optional<ProblemKind> problem_kind_from_string(const std::string& s);
/// Roles that must be present for a kind.
const std::vector<std::string>& required_roles(ProblemKind k);

/// A validated problem file.
///
///     kind: hamiltonian
///     param: l = 1
///     a: (1 + (l/w)*cos(2*w*t))/(2*m)
///
/// Optional keys: variable, change_of_variable, cov_rate (the lambda of the
/// catalog entry, default 1) and solution (a known solution of a
/// riccati-general problem).
struct ProblemSpec {
  ProblemKind kind = ProblemKind::ReducedOde;
  std::map<std::string, std::string> coefficients;
  std::map<std::string, algebra::BigRational> parameters;
  std::optional<std::string> change_of_variable;
  std::optional<std::string> cov_rate;
  std::optional<std::string> solution;
  std::string variable;

  NodePtr coefficient_tree(const std::string& role) const;
};

/// Catalog keys accepted when no explicit list is supplied.
const std::set<std::string>& default_catalog_keys();

/// Throws SyntaxError for malformed expressions and ProblemError for a
/// missing role, unbound parameter, unknown key or unknown catalog key.
ProblemSpec parse_problem(const std::string& text, const std::set<std::string>& catalog_keys = default_catalog_keys());

/// Canonical text: fixed key order, expressions re-printed.
std::string pretty_print(const ProblemSpec& spec);

}  // namespace liouvprop::parser
