#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "liouvprop/algebra/rational_function.hpp"

namespace liouvprop::algebra {

struct Root {
  AlgebraicScalar value;
  int multiplicity = 1;
};

/// All roots of p with multiplicity. Candidates are located numerically and
/// then recognized and confirmed exactly; every returned root satisfies
/// p(root) = 0 in exact arithmetic. Sorted by the AlgebraicScalar order.
/// Throws UnsupportedFactorization when p needs an irreducible factor of
/// degree >= 3 or two different square roots.
std::vector<Root> find_roots(const Polynomial& p);

/// Numeric roots (Aberth iteration), used for candidate generation.
std::vector<std::complex<double>> numeric_roots(const Polynomial& p);

/// Best rational approximation with denominator <= max_den when it is within
/// tol of x (continued fractions).
std::optional<BigRational> recognize_rational(double x, double tol = 1e-9, long max_den = 1000000);

struct PartialFractionTerm {
  AlgebraicScalar root;
  int order = 1;
  AlgebraicScalar coefficient;
};

/// f = polynomial_part + sum coefficient / (var - root)^order
struct PartialFractions {
  Polynomial polynomial_part;
  std::vector<PartialFractionTerm> terms;

  RationalFunction resum(const std::string& var) const;
  /// Coefficient of 1/(var - root)^order, zero when absent.
  AlgebraicScalar coefficient(const AlgebraicScalar& root, int order) const;
};

PartialFractions partial_fractions(const RationalFunction& f);

/// Laurent coefficients of f at c: f = sum_{k >= -order} a_k (var - c)^k.
/// Returns a_{-order} .. a_{-order + count - 1}.
std::vector<AlgebraicScalar> laurent_coefficients(const RationalFunction& f, const AlgebraicScalar& c, int order,
                                                  int count);

}  // namespace liouvprop::algebra
