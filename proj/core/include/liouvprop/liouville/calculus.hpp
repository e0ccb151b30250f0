#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "liouvprop/liouville/expr.hpp"

namespace liouvprop::liouville {

/// Antiderivative of a rational function in closed form:
///   rational_part + sum c*log(arg) + sum d*arctan(lin/scale).
/// Conjugate simple poles x +- iy are merged into a real log of
/// (v-x)^2+y^2 and an arctan term.
struct RationalIntegral {
  struct LogTerm {
    AlgebraicScalar coefficient;
    algebra::Polynomial argument;
  };
  struct ArctanTerm {
    AlgebraicScalar coefficient;
    algebra::Polynomial argument;  // already divided by the scale y
  };

  RationalFunction rational_part;
  std::vector<LogTerm> logs;
  std::vector<ArctanTerm> arctans;

  Expr to_expr() const;
  /// exp of the antiderivative as a product of powers, with no Log nodes.
  Expr exp_to_expr() const;
};

/// Throws UnsupportedFactorization when the denominator does not split.
RationalIntegral integrate_rational(const RationalFunction& f);

/// exp(integral f), built so that powers of equal polynomial factors merge.
Expr exp_integral(const RationalFunction& f);

/// Fixpoint of the log-pair to arctan rules and cosh/sinh to exp merging.
Expr simplify(const Expr& e);

/// Regroups a*M*exp(z) + b*M*exp(-z) into (a+b)*M*cosh(z) + (a-b)*M*sinh(z).
Expr to_hyperbolic(const Expr& e);

/// True when a/b is free of `var` after simplification.
bool proportional(const Expr& a, const Expr& b, const std::string& var);

/// Samples a/b at the given points and returns the common ratio when its
/// spread stays below tol (relative).
std::optional<std::complex<double>> numeric_ratio(const Expr& a, const Expr& b, const std::string& var,
                                                  const std::vector<double>& points, double tol = 1e-9);

/// Compares a'/a and b'/b at the given points.
bool same_log_derivative(const Expr& a, const Expr& b, const std::string& var, const std::vector<double>& points,
                         double tol = 1e-9);

/// Equality after canonical simplification: identical canonical trees, equal
/// rational functions of `var`, or a difference that simplifies to 0.
bool structurally_equal(const Expr& a, const Expr& b, const std::string& var);

/// Antiderivative in `var` without integration constant. Handles sums of
/// rational terms, polynomial * exp(k var), and terms that become rational
/// under u = sin, cos or exp of k*var (tan is rewritten as sin/cos first).
std::optional<Expr> antiderivative(const Expr& f, const std::string& var);

}  // namespace liouvprop::liouville
