#pragma once

#include <vector>

#include "liouvprop/algebra/numbers.hpp"

namespace liouvprop::algebra {

using Matrix = std::vector<std::vector<AlgebraicScalar>>;
using Vector = std::vector<AlgebraicScalar>;

struct LinearSolution {
  enum class Kind { Unique, Parametric, Inconsistent };
  Kind kind = Kind::Inconsistent;
  /// A particular solution (free variables set to zero); empty if inconsistent.
  Vector particular;
  /// Basis of the null space; empty unless Parametric.
  std::vector<Vector> null_space;
};

/// Exact Gauss-Jordan elimination. The result is checked by substitution
/// before returning.
LinearSolution solve_linear(const Matrix& a, const Vector& rhs);

}  // namespace liouvprop::algebra
