#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "liouvprop/transforms/transforms.hpp"

namespace liouvprop::transforms {

/// f(k * l * t) -> replacement, where l is the rate of the change of
/// variable. A missing multiple matches every k; the replacement text may
/// then use the parameter k. Replacement text is in tau and may use l.
struct RewriteRule {
  liouville::Kind function;
  std::optional<algebra::BigRational> multiple;
  std::string replacement;
};

/// Data describing one catalog entry. Expression texts may use the rate
/// parameter l.
struct CatalogEntry {
  std::string key;
  std::string forward;     // tau as a function of t
  std::string alpha;       // (d tau/dt)^2 in tau
  std::string sqrt_alpha;  // d tau/dt in tau on the window
  bool variable_maps_to_tau = false;  // identity: t itself becomes tau
  std::vector<RewriteRule> rewrite_table;
  /// Names of rules from back_rule_names().
  std::vector<std::string> back_rules;
  /// Validity window as multiples of pi/l: (lo, hi); infinite when absent.
  std::optional<std::pair<double, double>> window_pi_over_rate;
};

/// A catalog entry instantiated at a concrete rate.
struct ChangeOfVariable {
  std::string key;
  algebra::BigRational rate;
  Expr forward;
  RationalFunction alpha;
  Expr sqrt_alpha;
  bool variable_maps_to_tau = false;
  std::vector<RewriteRule> rewrite_table;
  std::vector<std::string> back_rules;
  liouville::DomainWindow window;

  /// Maximum deviation of sqrt_alpha^2 from the rewritten (d forward/dt)^2
  /// over sample points of the window.
  double consistency_error() const;
};

class Catalog {
 public:
  /// The built-in entries: tan, exp, cos, identity.
  static const Catalog& builtin();

  void add(CatalogEntry entry);
  bool contains(const std::string& key) const;
  std::vector<std::string> keys() const;
  ChangeOfVariable instantiate(const std::string& key, const algebra::BigRational& rate) const;

 private:
  std::map<std::string, CatalogEntry> entries_;
};

/// Known back-substitution rules:
///   arctan-of-tan     arctan(tan(u)) -> u
///   pythagorean-cos   (1+tan(u)^2)^k -> cos(u)^(-2k)
///   tan-to-sin-cos    tan(u) -> sin(u)/cos(u)
///   pythagorean-sin   (1-cos(u)^2)^k -> sin(u)^(2k)
///   sinh-cosh-to-exp  cosh(u)+sinh(u) -> exp(u) (via simplify)
/// The cos(arctan(z)) identity behind pythagorean-cos uses the principal
/// branch, 1/sqrt(1+z^2), on the window of the entry.
const std::vector<std::string>& back_rule_names();

/// Rewrites a time-domain expression in tau. Throws RewriteIncomplete when a
/// subterm in t matches no table entry.
Expr rewrite_in_tau(const Expr& e, const ChangeOfVariable& cov, const std::string& time_var = "t",
                    const std::string& tau_var = "tau");

/// mu'' + p mu' + q mu = 0 in t becomes
///   mu_tautau + (alpha_tau/(2 alpha) + p/sqrt(alpha)) mu_tau + (q/alpha) mu = 0.
/// Throws RewriteIncomplete, or NonRationalResult when the coefficients are
/// not rational in tau.
GeneralODE2 algebrize(const GeneralODE2& time_domain, const ChangeOfVariable& cov, const std::string& tau_var = "tau");

struct BackSubstitution {
  Expr result;
  liouville::DomainWindow window;
  /// False when tau-side leftovers such as arctan(tan(..)) with a foreign
  /// argument remain.
  bool complete = true;
};

BackSubstitution back_substitute(const Expr& e, const ChangeOfVariable& cov, const std::string& tau_var = "tau",
                                 const std::string& time_var = "t");

}  // namespace liouvprop::transforms
