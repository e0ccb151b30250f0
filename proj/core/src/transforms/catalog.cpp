#include "liouvprop/transforms/catalog.hpp"

#include <cmath>

#include "liouvprop/errors.hpp"
#include "liouvprop/liouville/calculus.hpp"

namespace liouvprop::transforms {

using namespace liouville;
using algebra::BigRational;

namespace {

std::vector<CatalogEntry> builtin_entries() {
  return {
      {"tan",
       "tan(l*t)",
       "l^2*(1+tau^2)^2",
       "l*(1+tau^2)",
       false,
       {{Kind::Tan, BigRational(1), "tau"},
        {Kind::Sin, BigRational(1), "tau/sqrt(1+tau^2)"},
        {Kind::Cos, BigRational(1), "1/sqrt(1+tau^2)"},
        {Kind::Sin, BigRational(2), "2*tau/(1+tau^2)"},
        {Kind::Cos, BigRational(2), "(1-tau^2)/(1+tau^2)"}},
       {"arctan-of-tan", "pythagorean-cos", "tan-to-sin-cos"},
       std::make_pair(-0.5, 0.5)},
      {"exp",
       "exp(l*t)",
       "l^2*tau^2",
       "l*tau",
       false,
       {{Kind::Exp, std::nullopt, "tau^k"},
        {Kind::Sinh, std::nullopt, "(tau^k-tau^(-k))/2"},
        {Kind::Cosh, std::nullopt, "(tau^k+tau^(-k))/2"}},
       {"sinh-cosh-to-exp"},
       std::nullopt},
      {"cos",
       "cos(l*t)",
       "l^2*(1-tau^2)",
       "-l*sqrt(1-tau^2)",
       false,
       {{Kind::Cos, BigRational(1), "tau"},
        {Kind::Sin, BigRational(1), "sqrt(1-tau^2)"},
        {Kind::Cos, BigRational(2), "2*tau^2-1"},
        {Kind::Sin, BigRational(2), "2*tau*sqrt(1-tau^2)"}},
       {"pythagorean-sin"},
       std::make_pair(0.0, 1.0)},
      {"identity", "t", "1", "1", true, {}, {}, std::nullopt},
  };
}

Expr parse_with_rate(const std::string& text, const BigRational& rate, const std::string& tau_var,
                     std::optional<BigRational> k = std::nullopt) {
  std::map<std::string, BigRational> params{{"l", rate}};
  if (k) params["k"] = *k;
  Expr e = parse(text, params);
  return tau_var == "tau" ? e : substitute(e, "tau", var(tau_var));
}

bool is_trig(Kind k) { return k == Kind::Sin || k == Kind::Cos || k == Kind::Tan; }

bool contains_trig(const Expr& e) {
  if (is_trig(e.kind())) return true;
  for (const auto& a : e.args()) {
    if (contains_trig(a)) return true;
  }
  return false;
}

// c + c*f(u)^2 with the given sign on the square; returns (c, u).
std::optional<std::pair<AlgebraicScalar, Expr>> pythagorean_sum(const Expr& e, Kind f, long sign) {
  if (e.kind() != Kind::Add || e.args().size() != 2 || !e.args()[0].is_const()) return std::nullopt;
  AlgebraicScalar c = e.args()[0].value();
  auto [k, rest] = split_coefficient(e.args()[1]);
  if (!(k == c * AlgebraicScalar(sign))) return std::nullopt;
  auto [base, n] = split_power(rest);
  if (base.kind() != f || !(n == AlgebraicScalar(2L))) return std::nullopt;
  return std::make_pair(c, base.args()[0]);
}

std::optional<Expr> apply_rule(const std::string& rule, const Expr& e) {
  if (rule == "arctan-of-tan") {
    if (e.kind() == Kind::Arctan && e.args()[0].kind() == Kind::Tan) return e.args()[0].args()[0];
  } else if (rule == "tan-to-sin-cos") {
    if (e.kind() == Kind::Tan) return sin(e.args()[0]) * pow(cos(e.args()[0]), AlgebraicScalar(-1L));
  } else if (rule == "pythagorean-cos" || rule == "pythagorean-sin") {
    bool cosine = rule == "pythagorean-cos";
    Kind f = cosine ? Kind::Tan : Kind::Cos;
    long sign = cosine ? 1 : -1;
    auto [base, k] = split_power(e);
    if (auto m = pythagorean_sum(base, f, sign)) {
      const auto& [c, u] = *m;
      AlgebraicScalar expo = cosine ? AlgebraicScalar(-2L) * k : AlgebraicScalar(2L) * k;
      Expr g = cosine ? cos(u) : sin(u);
      return mul({pow(Expr(c), k), pow(g, expo)});
    }
  } else if (rule == "sinh-cosh-to-exp") {
    // handled by simplify after the rule passes
  }
  return std::nullopt;
}

// Top-down first so that (1+tan^2)^k is seen before its base alone.
Expr apply_everywhere(const std::string& rule, const Expr& e) {
  if (auto r = apply_rule(rule, e)) return apply_everywhere(rule, *r);
  Expr cur = map_args(e, [&](const Expr& a) { return apply_everywhere(rule, a); });
  if (auto r = apply_rule(rule, cur)) return apply_everywhere(rule, *r);
  return cur;
}

}  // namespace

const std::vector<std::string>& back_rule_names() {
  static const std::vector<std::string> names = {"arctan-of-tan", "pythagorean-cos", "tan-to-sin-cos",
                                                 "pythagorean-sin", "sinh-cosh-to-exp"};
  return names;
}

const Catalog& Catalog::builtin() {
  static const Catalog cat = [] {
    Catalog c;
    for (auto& e : builtin_entries()) c.add(std::move(e));
    return c;
  }();
  return cat;
}

void Catalog::add(CatalogEntry entry) {
  for (const auto& r : entry.back_rules) {
    const auto& names = back_rule_names();
    if (std::find(names.begin(), names.end(), r) == names.end()) {
      throw std::invalid_argument("unknown back-substitution rule '" + r + "'");
    }
  }
  std::string key = entry.key;
  entries_[key] = std::move(entry);
}

bool Catalog::contains(const std::string& key) const { return entries_.count(key) != 0; }

std::vector<std::string> Catalog::keys() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries_) out.push_back(k);
  return out;
}

ChangeOfVariable Catalog::instantiate(const std::string& key, const BigRational& rate) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw ProblemError(ProblemError::Kind::UnknownCatalogKey, "unknown change of variable '" + key + "'");
  if (rate == 0) throw std::invalid_argument("change of variable rate must be nonzero");
  const CatalogEntry& e = it->second;
  ChangeOfVariable cov;
  cov.key = key;
  cov.rate = rate;
  cov.forward = parse(e.forward, {{"l", rate}});
  auto alpha = to_rational(parse_with_rate(e.alpha, rate, "tau"), "tau");
  if (!alpha) throw std::invalid_argument("catalog alpha must be rational in tau");
  cov.alpha = *alpha;
  cov.sqrt_alpha = parse_with_rate(e.sqrt_alpha, rate, "tau");
  cov.variable_maps_to_tau = e.variable_maps_to_tau;
  cov.rewrite_table = e.rewrite_table;
  cov.back_rules = e.back_rules;
  cov.window.variable = "t";
  if (e.window_pi_over_rate) {
    double scale = M_PI / std::abs(rate.get_d());
    cov.window.lo = e.window_pi_over_rate->first * scale;
    cov.window.hi = e.window_pi_over_rate->second * scale;
  }
  return cov;
}

double ChangeOfVariable::consistency_error() const {
  Expr dforward = differentiate(forward, "t");
  Expr a = from_rational(alpha);
  double lo = std::isfinite(window.lo) ? window.lo : -1.0;
  double hi = std::isfinite(window.hi) ? window.hi : 1.0;
  double worst = 0;
  for (int k = 1; k <= 9; ++k) {
    double t = lo + (hi - lo) * k / 10.0;
    std::complex<double> tau = eval_complex(forward, {{"t", t}});
    std::complex<double> d = eval_complex(dforward, {{"t", t}});
    std::complex<double> s = eval_complex(sqrt_alpha, {{"tau", tau}});
    std::complex<double> al = eval_complex(a, {{"tau", tau}});
    double scale = 1.0 + std::abs(d * d);
    worst = std::max({worst, std::abs(s - d) / scale, std::abs(al - d * d) / scale});
  }
  return worst;
}

Expr rewrite_in_tau(const Expr& e, const ChangeOfVariable& cov, const std::string& time_var, const std::string& tau_var) {
  if (!depends_on(e, time_var)) return e;
  if (e.kind() == Kind::Var) {
    if (cov.variable_maps_to_tau) return var(tau_var);
    throw RewriteIncomplete("bare " + time_var + " has no rewrite under change of variable '" + cov.key + "'");
  }
  bool function = e.kind() >= Kind::Exp && e.kind() <= Kind::Cosh;
  if (function) {
    auto [c, rest] = split_coefficient(e.args()[0]);
    if (rest == var(time_var) && c.is_rational()) {
      BigRational k = c.to_rational() / cov.rate;
      for (const auto& rule : cov.rewrite_table) {
        if (rule.function != e.kind()) continue;
        if (rule.multiple && *rule.multiple != k) continue;
        return parse_with_rate(rule.replacement, cov.rate, tau_var, k);
      }
    }
    if (!cov.variable_maps_to_tau) {
      throw RewriteIncomplete("no rewrite for " + to_string(e) + " under change of variable '" + cov.key + "'");
    }
  }
  return map_args(e, [&](const Expr& a) { return rewrite_in_tau(a, cov, time_var, tau_var); });
}

GeneralODE2 algebrize(const GeneralODE2& g, const ChangeOfVariable& cov, const std::string& tau_var) {
  Expr p = rewrite_in_tau(g.b1, cov, g.var, tau_var);
  Expr q = rewrite_in_tau(g.b0, cov, g.var, tau_var);
  Expr alpha = from_rational(cov.alpha);
  if (tau_var != "tau") alpha = substitute(alpha, "tau", var(tau_var));
  Expr sqrt_alpha = tau_var == "tau" ? cov.sqrt_alpha : substitute(cov.sqrt_alpha, "tau", var(tau_var));
  Expr b1 = Expr(AlgebraicScalar::rational(1, 2)) * differentiate(alpha, tau_var) / alpha + p / sqrt_alpha;
  Expr b0 = q / alpha;
  auto rb1 = to_rational(b1, tau_var);
  auto rb0 = to_rational(b0, tau_var);
  if (!rb1 || !rb0) {
    throw NonRationalResult("algebrized coefficients are not rational in " + tau_var + ": " + to_string(b1) + ", " +
                            to_string(b0));
  }
  return {from_rational(*rb1), from_rational(*rb0), tau_var};
}

BackSubstitution back_substitute(const Expr& e, const ChangeOfVariable& cov, const std::string& tau_var,
                                 const std::string& time_var) {
  Expr forward = time_var == "t" ? cov.forward : substitute(cov.forward, "t", var(time_var));
  Expr cur = substitute(e, tau_var, forward);
  for (const auto& rule : cov.back_rules) cur = apply_everywhere(rule, cur);
  cur = simplify(expand(cur));
  BackSubstitution out{cur, cov.window, true};
  out.window.variable = time_var;
  std::function<void(const Expr&)> scan = [&](const Expr& x) {
    if (x.kind() == Kind::Arctan && contains_trig(x.args()[0])) out.complete = false;
    if (x.kind() == Kind::Pow && !x.exponent().is_integer() && contains_trig(x.args()[0])) out.complete = false;
    for (const auto& a : x.args()) scan(a);
  };
  scan(cur);
  return out;
}

}  // namespace liouvprop::transforms
