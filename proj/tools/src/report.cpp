#include "liouvprop/cli/report.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "liouvprop/errors.hpp"
#include "liouvprop/liouville/calculus.hpp"

namespace liouvprop::cli {

using nlohmann::json;
using nlohmann::ordered_json;
using namespace liouville;

namespace {

const char* const kSchemaFields[] = {"mu0", "mu1", "alpha0", "beta0", "gamma0", "green"};

bool is_schema_field(const std::string& f) {
  for (const char* s : kSchemaFields) {
    if (f == s) return true;
  }
  return false;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::size_t matching_paren(const std::string& s, std::size_t open) {
  int depth = 0;
  for (std::size_t k = open; k < s.size(); ++k) {
    if (s[k] == '(') ++depth;
    if (s[k] == ')' && --depth == 0) return k;
  }
  throw SchemaMismatch("unbalanced parentheses in '" + s + "'");
}

std::vector<std::string> split_top_level(const std::string& s) {
  std::vector<std::string> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] == '(') ++depth;
    if (s[k] == ')') --depth;
    if (s[k] == ',' && depth == 0) {
      parts.push_back(trim(s.substr(start, k - start)));
      start = k + 1;
    }
  }
  parts.push_back(trim(s.substr(start)));
  return parts;
}

double number_or_inf(const json& j, double inf) {
  return j.is_null() ? inf : j.get<double>();
}

ordered_json grid_json(const GridSpec& g) {
  ordered_json axes = ordered_json::array();
  for (const auto& a : g.axes) axes.push_back({{"var", a.var}, {"lo", a.lo}, {"hi", a.hi}, {"count", a.count}});
  ordered_json j{{"axes", axes}};
  if (!g.avoid.empty()) {
    j["avoid"] = g.avoid;
    j["min_abs"] = g.min_abs;
  }
  return j;
}

GridSpec grid_from_json(const json& j) {
  GridSpec g;
  for (const auto& a : j.at("axes")) {
    g.axes.push_back({a.at("var").get<std::string>(), a.at("lo").get<double>(), a.at("hi").get<double>(),
                      a.at("count").get<int>()});
  }
  if (j.contains("avoid")) {
    g.avoid = j.at("avoid").get<std::string>();
    g.min_abs = j.at("min_abs").get<double>();
  }
  return g;
}

}  // namespace

Expr parse_report_expression(const std::string& text) {
  static const std::string key = "integral(";
  std::string rest = text;
  std::vector<Expr> slots;
  std::size_t pos;
  while ((pos = rest.find(key)) != std::string::npos) {
    bool word_start = pos == 0 || !(std::isalnum(static_cast<unsigned char>(rest[pos - 1])) || rest[pos - 1] == '_');
    if (!word_start) throw SchemaMismatch("unexpected identifier near '" + rest.substr(pos) + "'");
    std::size_t open = pos + key.size() - 1;
    std::size_t close = matching_paren(rest, open);
    auto parts = split_top_level(rest.substr(open + 1, close - open - 1));
    if (parts.size() != 4) throw SchemaMismatch("integral(...) needs four arguments: " + rest.substr(pos));
    auto lower = exact_value(parse(parts[2]));
    if (!lower) throw SchemaMismatch("integral lower limit is not exact: " + parts[2]);
    slots.push_back(integral(parse_report_expression(parts[0]), parts[1], *lower, parse_report_expression(parts[3])));
    std::string slot = "integralslot" + std::to_string(slots.size() - 1);
    rest = rest.substr(0, pos) + slot + rest.substr(close + 1);
  }
  Expr e = parse(rest);
  for (std::size_t k = 0; k < slots.size(); ++k) e = substitute(e, "integralslot" + std::to_string(k), slots[k]);
  return e;
}

bool Report::all_pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

CheckContext Report::context() const { return {hamiltonian, equation, fields}; }

const CheckResult* Report::check(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.spec.name == name) return &c;
  }
  return nullptr;
}

const Annotation* Report::annotation(const std::string& name) const {
  for (const auto& a : annotations) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

ordered_json to_json(const Report& r) {
  ordered_json j;
  j["command"] = r.command;
  j["target"] = r.target;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  j["parameters"] = params;
  if (r.hamiltonian) {
    j["hamiltonian"] = {{"a", to_string(r.hamiltonian->a)},
                        {"b", to_string(r.hamiltonian->b)},
                        {"c", to_string(r.hamiltonian->c)},
                        {"variable", r.hamiltonian->var}};
  } else {
    j["hamiltonian"] = nullptr;
  }
  if (r.equation) {
    j["equation"] = {{"b1", to_string(r.equation->b1)}, {"b0", to_string(r.equation->b0)}, {"variable", r.equation->var}};
  } else {
    j["equation"] = nullptr;
  }
  for (const char* f : kSchemaFields) {
    auto it = r.fields.find(f);
    if (it == r.fields.end()) {
      j[f] = nullptr;
    } else {
      j[f] = to_string(it->second);
    }
  }
  ordered_json window{{"variable", r.window.variable}};
  window["lo"] = std::isfinite(r.window.lo) ? ordered_json(r.window.lo) : ordered_json(nullptr);
  window["hi"] = std::isfinite(r.window.hi) ? ordered_json(r.window.hi) : ordered_json(nullptr);
  j["window"] = window;
  ordered_json extra = ordered_json::object();
  for (const auto& [k, v] : r.fields) {
    if (!is_schema_field(k)) extra[k] = to_string(v);
  }
  j["fields"] = extra;
  j["kovacic"] = r.kovacic.is_null() ? ordered_json(nullptr) : r.kovacic;
  ordered_json checks = ordered_json::array();
  for (const auto& c : r.checks) {
    ordered_json cj;
    cj["name"] = c.spec.name;
    cj["max_residual"] = c.max_residual;
    cj["tolerance"] = c.spec.tolerance;
    cj["pass"] = c.pass;
    cj["kind"] = c.spec.kind;
    cj["inputs"] = c.spec.inputs;
    cj["grid"] = grid_json(c.spec.grid);
    ordered_json p = ordered_json::object();
    for (const auto& [k, v] : c.spec.params) p[k] = v;
    cj["params"] = p;
    cj["points"] = c.spec.points;
    cj["excluded"] = c.excluded;
    cj["grid_description"] = c.grid;
    cj["detail"] = c.detail;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  ordered_json ann = ordered_json::array();
  for (const auto& a : r.annotations) {
    ann.push_back({{"name", a.name},
                   {"printed", a.printed},
                   {"computed", a.computed},
                   {"structural_match", a.structural_match},
                   {"max_residual", a.max_residual},
                   {"tolerance", a.tolerance},
                   {"verdict", a.verdict},
                   {"note", a.note}});
  }
  j["annotations"] = ann;
  j["notes"] = r.notes;
  return j;
}

Report report_from_json(const json& j) {
  try {
    Report r;
    r.command = j.at("command").get<std::string>();
    r.target = j.at("target").get<std::string>();
    for (const auto& [k, v] : j.at("parameters").items()) r.parameters[k] = v.get<std::string>();
    if (!j.at("hamiltonian").is_null()) {
      const auto& h = j.at("hamiltonian");
      r.hamiltonian = propagator::QuadraticHamiltonian{
          parse_report_expression(h.at("a").get<std::string>()), parse_report_expression(h.at("b").get<std::string>()),
          parse_report_expression(h.at("c").get<std::string>()), std::nullopt, h.at("variable").get<std::string>()};
    }
    if (!j.at("equation").is_null()) {
      const auto& e = j.at("equation");
      r.equation = transforms::GeneralODE2{parse_report_expression(e.at("b1").get<std::string>()),
                                           parse_report_expression(e.at("b0").get<std::string>()),
                                           e.at("variable").get<std::string>()};
    }
    for (const char* f : kSchemaFields) {
      if (!j.at(f).is_null()) r.fields[f] = parse_report_expression(j.at(f).get<std::string>());
    }
    for (const auto& [k, v] : j.at("fields").items()) r.fields[k] = parse_report_expression(v.get<std::string>());
    const auto& w = j.at("window");
    r.window.variable = w.at("variable").get<std::string>();
    r.window.lo = number_or_inf(w.at("lo"), -INFINITY);
    r.window.hi = number_or_inf(w.at("hi"), INFINITY);
    if (!j.at("kovacic").is_null()) r.kovacic = ordered_json::parse(j.at("kovacic").dump());
    for (const auto& cj : j.at("checks")) {
      CheckResult c;
      c.spec.name = cj.at("name").get<std::string>();
      c.spec.kind = cj.at("kind").get<std::string>();
      c.spec.inputs = cj.at("inputs").get<std::vector<std::string>>();
      c.spec.grid = grid_from_json(cj.at("grid"));
      c.spec.tolerance = cj.at("tolerance").get<double>();
      for (const auto& [k, v] : cj.at("params").items()) c.spec.params[k] = v.get<double>();
      c.spec.points = cj.at("points").get<std::vector<double>>();
      c.max_residual = cj.at("max_residual").get<double>();
      c.pass = cj.at("pass").get<bool>();
      c.excluded = cj.value("excluded", std::size_t{0});
      c.grid = cj.value("grid_description", std::string());
      c.detail = cj.value("detail", std::string());
      r.checks.push_back(std::move(c));
    }
    for (const auto& aj : j.value("annotations", json::array())) {
      Annotation a;
      a.name = aj.at("name").get<std::string>();
      a.printed = aj.at("printed").get<std::string>();
      a.computed = aj.at("computed").get<std::string>();
      a.structural_match = aj.at("structural_match").get<bool>();
      a.max_residual = aj.at("max_residual").get<double>();
      a.tolerance = aj.at("tolerance").get<double>();
      a.verdict = aj.at("verdict").get<std::string>();
      a.note = aj.value("note", std::string());
      r.annotations.push_back(std::move(a));
    }
    r.notes = j.value("notes", std::vector<std::string>{});
    return r;
  } catch (const json::exception& e) {
    throw SchemaMismatch(std::string("malformed report: ") + e.what());
  } catch (const SyntaxError& e) {
    throw SchemaMismatch(std::string("malformed expression in report: ") + e.what());
  }
}

std::string to_text(const Report& r) {
  std::ostringstream os;
  os << r.command << " " << r.target;
  for (const auto& [k, v] : r.parameters) os << " " << k << "=" << v;
  os << "\n";
  if (r.hamiltonian) {
    os << "  a(" << r.hamiltonian->var << ") = " << to_string(r.hamiltonian->a) << "\n";
    os << "  b(" << r.hamiltonian->var << ") = " << to_string(r.hamiltonian->b) << "\n";
    os << "  c(" << r.hamiltonian->var << ") = " << to_string(r.hamiltonian->c) << "\n";
  }
  if (r.equation) {
    os << "  equation: y'' + (" << to_string(r.equation->b1) << ") y' + (" << to_string(r.equation->b0)
       << ") y = 0 in " << r.equation->var << "\n";
  }
  if (!r.kovacic.is_null()) {
    os << "  kovacic: " << r.kovacic.value("case", std::string("?")) << ", "
       << r.kovacic.value("galois_class", std::string("?")) << "\n";
  }
  for (const auto& [k, v] : r.fields) os << "  " << k << " = " << to_string(v) << "\n";
  if (std::isfinite(r.window.lo) || std::isfinite(r.window.hi)) {
    os << "  window: " << r.window.lo << " < " << r.window.variable << " < " << r.window.hi << "\n";
  }
  os << "checks:\n";
  for (const auto& c : r.checks) {
    os << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.spec.name << "  max " << c.max_residual << " (tol "
       << c.spec.tolerance << ")";
    if (!c.detail.empty()) os << "  " << c.detail;
    os << "\n";
  }
  if (!r.annotations.empty()) os << "printed formulas:\n";
  for (const auto& a : r.annotations) {
    os << "  " << a.name << ": " << a.verdict << (a.structural_match ? ", structurally equal" : "")
       << ", residual " << a.max_residual << "\n      printed  " << a.printed << "\n      computed " << a.computed
       << "\n";
    if (!a.note.empty()) os << "      " << a.note << "\n";
  }
  for (const auto& n : r.notes) os << "note: " << n << "\n";
  return os.str();
}

}  // namespace liouvprop::cli
