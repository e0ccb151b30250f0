#pragma once

#include <map>
#include <string>

#include "liouvprop/cli/pipeline.hpp"

namespace liouvprop::cli {

/// Built-in reproduction targets. Each returns a Problem carrying the
/// printed formulas as claims.

/// Ince equation with frequency omega and modulation lambda; kappa = lambda/omega.
Problem ince(const algebra::BigRational& lambda, const algebra::BigRational& omega);

/// Riccati toys 1..5. Parameters: a0 (toy 2), a and l (toy 5).
Problem toy(int id, const std::map<std::string, algebra::BigRational>& params);

/// Characteristic equation mu'' + t^n mu = 0 for n in {0, -2, -4}.
Problem tn(long n);

}  // namespace liouvprop::cli
