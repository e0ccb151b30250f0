#include "liouvprop/parser/problem.hpp"

#include <sstream>

#include "liouvprop/parser/parser.hpp"

namespace liouvprop::parser {

namespace {

const std::vector<std::string> kRoleOrder = {"r", "b1", "b0", "a0", "a1", "a2", "a", "b", "c"};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool is_role(const std::string& key) {
  for (const auto& r : kRoleOrder) {
    if (r == key) return true;
  }
  return false;
}

[[noreturn]] void fail(ProblemError::Kind kind, std::size_t line, const std::string& msg) {
  throw ProblemError(kind, "line " + std::to_string(line) + ": " + msg);
}

void check_bound(const NodePtr& tree, const ProblemSpec& spec, const std::string& what) {
  for (const auto& s : free_symbols(*tree)) {
    if (is_reserved_name(s) || spec.parameters.count(s) != 0) continue;
    throw ProblemError(ProblemError::Kind::UnboundParameter, what + ": parameter '" + s + "' is not declared");
  }
}

}  // namespace

std::string to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::ReducedOde:
      return "reduced-ode";
    case ProblemKind::GeneralOde:
      return "general-ode";
    case ProblemKind::RiccatiGeneral:
      return "riccati-general";
    case ProblemKind::Hamiltonian:
      return "hamiltonian";
    case ProblemKind::Characteristic:
      return "characteristic";
  }
  return {};
}

std::optional<ProblemKind> problem_kind_from_string(const std::string& s) {
  for (auto k : {ProblemKind::ReducedOde, ProblemKind::GeneralOde, ProblemKind::RiccatiGeneral,
                 ProblemKind::Hamiltonian, ProblemKind::Characteristic}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

const std::vector<std::string>& required_roles(ProblemKind k) {
  static const std::vector<std::string> reduced = {"r"};
  static const std::vector<std::string> general = {"b1", "b0"};
  static const std::vector<std::string> riccati = {"a0", "a1", "a2"};
  static const std::vector<std::string> hamiltonian = {"a", "b", "c"};
  switch (k) {
    case ProblemKind::ReducedOde:
      return reduced;
    case ProblemKind::GeneralOde:
    case ProblemKind::Characteristic:
      return general;
    case ProblemKind::RiccatiGeneral:
      return riccati;
    case ProblemKind::Hamiltonian:
      return hamiltonian;
  }
  return reduced;
}

const std::set<std::string>& default_catalog_keys() {
  static const std::set<std::string> keys = {"cos", "exp", "identity", "tan"};
  return keys;
}

NodePtr ProblemSpec::coefficient_tree(const std::string& role) const {
  auto it = coefficients.find(role);
  if (it == coefficients.end()) throw ProblemError(ProblemError::Kind::MissingRole, "missing role '" + role + "'");
  return parse_expression(it->second);
}

ProblemSpec parse_problem(const std::string& text, const std::set<std::string>& catalog_keys) {
  ProblemSpec spec;
  bool have_kind = false;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    auto sep = line.find(':');
    if (sep == std::string::npos) sep = line.find('=');
    if (sep == std::string::npos) fail(ProblemError::Kind::Malformed, lineno, "expected 'key: value'");
    std::string key = trim(line.substr(0, sep));
    std::string value = trim(line.substr(sep + 1));
    if (value.empty()) fail(ProblemError::Kind::Malformed, lineno, "empty value for '" + key + "'");

    if (key == "kind") {
      auto k = problem_kind_from_string(value);
      if (!k) fail(ProblemError::Kind::Malformed, lineno, "unknown kind '" + value + "'");
      spec.kind = *k;
      have_kind = true;
    } else if (key == "param") {
      auto eq = value.find('=');
      if (eq == std::string::npos) fail(ProblemError::Kind::Malformed, lineno, "expected 'param: name = value'");
      std::string name = trim(value.substr(0, eq));
      if (is_reserved_name(name) || is_known_function(name) || name.empty()) {
        fail(ProblemError::Kind::Malformed, lineno, "'" + name + "' cannot be a parameter name");
      }
      try {
        spec.parameters[name] = algebra::parse_rational(trim(value.substr(eq + 1)));
      } catch (const std::invalid_argument& e) {
        fail(ProblemError::Kind::Malformed, lineno, e.what());
      }
    } else if (key == "variable") {
      spec.variable = value;
    } else if (key == "change_of_variable") {
      if (catalog_keys.count(value) == 0) {
        fail(ProblemError::Kind::UnknownCatalogKey, lineno, "unknown change of variable '" + value + "'");
      }
      spec.change_of_variable = value;
    } else if (key == "cov_rate") {
      spec.cov_rate = value;
    } else if (key == "solution") {
      spec.solution = value;
    } else if (is_role(key)) {
      spec.coefficients[key] = value;
    } else {
      fail(ProblemError::Kind::UnknownKey, lineno, "unknown key '" + key + "'");
    }
  }
  if (!have_kind) throw ProblemError(ProblemError::Kind::MissingRole, "missing 'kind:' header");
  if (spec.variable.empty()) {
    bool tau_domain = spec.kind == ProblemKind::ReducedOde || spec.kind == ProblemKind::GeneralOde;
    spec.variable = tau_domain ? "tau" : "t";
  }
  for (const auto& role : required_roles(spec.kind)) {
    if (spec.coefficients.count(role) == 0) {
      throw ProblemError(ProblemError::Kind::MissingRole,
                         "kind " + to_string(spec.kind) + " requires role '" + role + "'");
    }
  }
  for (const auto& [role, value] : spec.coefficients) {
    bool wanted = false;
    for (const auto& r : required_roles(spec.kind)) wanted = wanted || r == role;
    if (!wanted) {
      throw ProblemError(ProblemError::Kind::UnknownKey,
                         "role '" + role + "' does not belong to kind " + to_string(spec.kind));
    }
    check_bound(parse_expression(value), spec, "role " + role);
  }
  if (spec.cov_rate) check_bound(parse_expression(*spec.cov_rate), spec, "cov_rate");
  if (spec.solution) check_bound(parse_expression(*spec.solution), spec, "solution");
  return spec;
}

std::string pretty_print(const ProblemSpec& spec) {
  std::ostringstream out;
  out << "kind: " << to_string(spec.kind) << "\n";
  out << "variable: " << spec.variable << "\n";
  for (const auto& [name, value] : spec.parameters) out << "param: " << name << " = " << value.get_str() << "\n";
  for (const auto& role : kRoleOrder) {
    auto it = spec.coefficients.find(role);
    if (it != spec.coefficients.end()) out << role << ": " << print(*parse_expression(it->second)) << "\n";
  }
  if (spec.change_of_variable) out << "change_of_variable: " << *spec.change_of_variable << "\n";
  if (spec.cov_rate) out << "cov_rate: " << print(*parse_expression(*spec.cov_rate)) << "\n";
  if (spec.solution) out << "solution: " << print(*parse_expression(*spec.solution)) << "\n";
  return out.str();
}

}  // namespace liouvprop::parser
