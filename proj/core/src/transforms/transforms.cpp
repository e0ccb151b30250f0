#include "liouvprop/transforms/transforms.hpp"

#include "liouvprop/errors.hpp"
#include "liouvprop/liouville/calculus.hpp"

namespace liouvprop::transforms {

using namespace liouville;

namespace {

const AlgebraicScalar kHalf = AlgebraicScalar::rational(1, 2);

Expr inverse(const Expr& e) { return pow(e, AlgebraicScalar(-1L)); }

// Rational results get a normalized numerator/denominator form.
Expr tidy(const Expr& e, const std::string& var) {
  if (auto r = to_rational(e, var)) return from_rational(*r);
  return e;
}

}  // namespace

GeneralODE2 CharacteristicEq::as_general() const {
  return {-tau_t, Expr(4L) * sigma_t, var};
}

ReducedODE Reduction::reduced() const {
  auto r = to_rational(rho, var);
  if (!r) throw NonRationalResult("reduced coefficient is not rational in " + var + ": " + to_string(rho));
  return {*r};
}

Reduction reduce_general(const GeneralODE2& g) {
  const std::string& v = g.var;
  Expr rho = g.b1 * g.b1 * Expr(AlgebraicScalar::rational(1, 4)) + Expr(kHalf) * differentiate(g.b1, v) - g.b0;
  Expr multiplier;
  if (auto b1 = to_rational(g.b1, v)) {
    multiplier = exp_integral(*b1 * RationalFunction::constant(v, -kHalf));
  } else {
    multiplier = exp(Expr(-kHalf) * integral(substitute(g.b1, v, var("s")), "s", AlgebraicScalar(), var(v)));
  }
  return {tidy(expand(rho), v), multiplier, v};
}

RiccatiReduction riccati_to_reduced(const RiccatiGeneral& ric) {
  const std::string& v = ric.var;
  if (ric.a2.is_zero()) throw std::invalid_argument("riccati equation needs a2 != 0");
  Expr alpha = -(differentiate(ric.a2, v) / (Expr(2L) * ric.a2 * ric.a2) + ric.a1 / (Expr(2L) * ric.a2));
  Expr beta = -inverse(ric.a2);
  Expr r = (ric.a0 + ric.a1 * alpha + ric.a2 * alpha * alpha - differentiate(alpha, v)) / beta;
  return {tidy(expand(r), v), tidy(alpha, v), beta, v};
}

RiccatiGeneral ode_to_riccati(const GeneralODE2& g) { return {-g.b0, -g.b1, Expr(-1L), g.var}; }

RiccatiGeneral ode_to_riccati(const ReducedODE& red) {
  return {from_rational(red.r), Expr(), Expr(-1L), red.r.var()};
}

CharacteristicEq characteristic_from_hamiltonian(const Expr& a, const Expr& b, const Expr& c, const std::string& var) {
  if (a.is_zero()) throw std::invalid_argument("hamiltonian needs a != 0");
  Expr log_a = differentiate(a, var) / a;
  Expr sigma = a * b - c * c + Expr(kHalf) * c * log_a - Expr(kHalf) * differentiate(c, var);
  return {log_a, expand(sigma), var};
}

}  // namespace liouvprop::transforms
