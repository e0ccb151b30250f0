#pragma once

#include <string>

#include "liouvprop/liouville/expr.hpp"

namespace liouvprop::transforms {

using liouville::Expr;
using algebra::RationalFunction;

/// y'' + b1 y' + b0 y = 0 in `var`.
struct GeneralODE2 {
  Expr b1;
  Expr b0;
  std::string var = "tau";
};

/// xi'' = r xi.
struct ReducedODE {
  RationalFunction r;
};

/// v' = a0 + a1 v + a2 v^2, a2 != 0.
struct RiccatiGeneral {
  Expr a0;
  Expr a1;
  Expr a2;
  std::string var = "t";
};

/// mu'' - tau_t mu' + 4 sigma_t mu = 0 in t.
struct CharacteristicEq {
  Expr tau_t;
  Expr sigma_t;
  std::string var = "t";

  GeneralODE2 as_general() const;
};

struct Reduction {
  Expr rho;
  /// exp(-1/2 integral b1); y = xi * multiplier.
  Expr multiplier;
  std::string var;

  /// Throws NonRationalResult when rho is not rational in var.
  ReducedODE reduced() const;
};

Reduction reduce_general(const GeneralODE2& g);

/// v = alpha_shift + beta_scale * w turns the Riccati equation into
/// w' = r - w^2.
struct RiccatiReduction {
  Expr r;
  Expr alpha_shift;
  Expr beta_scale;
  std::string var;
};

RiccatiReduction riccati_to_reduced(const RiccatiGeneral& ric);

/// Logarithmic-derivative maps: w = y'/y for a general equation (a2 = -1),
/// w = xi'/xi for a reduced one.
RiccatiGeneral ode_to_riccati(const GeneralODE2& g);
RiccatiGeneral ode_to_riccati(const ReducedODE& red);

/// H = a p^2 + b x^2 + c (px + xp). The Riccati equation of the quadratic
/// phase is alpha' + b + 4c alpha + 4a alpha^2 = 0, and alpha = mu'/(4a mu)
/// - c/(2a) linearizes it to
///   mu'' - (a'/a) mu' + (4ab - 4c^2 + 2c a'/a - 2c') mu = 0.
CharacteristicEq characteristic_from_hamiltonian(const Expr& a, const Expr& b, const Expr& c,
                                                 const std::string& var = "t");

}  // namespace liouvprop::transforms
