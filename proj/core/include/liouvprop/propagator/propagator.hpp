#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "liouvprop/liouville/expr.hpp"
#include "liouvprop/transforms/transforms.hpp"

namespace liouvprop::propagator {

using algebra::AlgebraicScalar;
using liouville::DomainWindow;
using liouville::Expr;

/// H = a p^2 + b x^2 + c (px + xp), so that
///   i psi_t = -a psi_xx + b x^2 psi - i c psi - 2 i c x psi_x.
/// The Riccati system of the quadratic phase reads
///   alpha' + b + 2 c_R alpha + 4 a alpha^2 = 0,  beta' + (c_R + 4 a alpha) beta = 0,
///   gamma' + a beta^2 = 0
/// with c_R = 2c.
struct QuadraticHamiltonian {
  Expr a;
  Expr b;
  Expr c;
  /// Gauge term -i d(t) psi; carried along, never used in residuals.
  std::optional<Expr> d;
  std::string var = "t";

  Expr c_riccati() const { return Expr(2L) * c; }
  transforms::CharacteristicEq characteristic() const;
  /// alpha' = a0 + a1 alpha + a2 alpha^2 read as the alpha equation above.
  static QuadraticHamiltonian from_riccati(const transforms::RiccatiGeneral& ric);
};

/// Exact value of e at var = 0, or nullopt when it does not fold.
std::optional<AlgebraicScalar> value_at_zero(const Expr& e, const std::string& var = "t");

struct CharacteristicSolutions {
  Expr mu0;
  Expr mu1;
  DomainWindow window;
};

struct Normalization {
  CharacteristicSolutions solutions;
  /// mu0 = c0[0] f + c0[1] g and mu1 = c1[0] f + c1[1] g.
  std::pair<AlgebraicScalar, AlgebraicScalar> mu0_coefficients;
  std::pair<AlgebraicScalar, AlgebraicScalar> mu1_coefficients;
};

/// Picks mu0(0) = 0, mu0'(0) = 2a(0) and mu1(0) = mu1_at_zero, mu1'(0) = 0
/// from the basis {f, g}. Throws DegenerateBasis when the 2x2 system is
/// singular or the initial values do not fold to exact constants.
Normalization normalize_solutions(const Expr& f, const Expr& g, const QuadraticHamiltonian& h,
                                  const DomainWindow& window = {},
                                  const AlgebraicScalar& mu1_at_zero = AlgebraicScalar(1L));

struct RiccatiTriple {
  Expr alpha0;
  Expr beta0;
  Expr gamma0;
};

/// alpha0 = mu0'/(4 a mu0) - c_R/(4a), beta0 = -1/mu0 and
/// gamma0 = mu1/(2 mu1(0) mu0) + c_R(0)/(2 a(0)).
RiccatiTriple build_triple(const CharacteristicSolutions& cs, const QuadraticHamiltonian& h);

/// gamma0 with the constant fixed by the small-t expansion of mu1/mu0:
/// mu1/(2 mu1(0) mu0) + c_R(0)/(4 a(0)).
Expr gamma0_from_asymptotics(const CharacteristicSolutions& cs, const QuadraticHamiltonian& h);

struct GreenFunction {
  RiccatiTriple triple;
  Expr mu0;
  /// (2 pi i mu0)^(-1/2) exp(i (alpha0 x^2 + beta0 x y + gamma0 y^2)) in x, y, t.
  Expr closed_form;
};

GreenFunction build_green(const RiccatiTriple& triple, const Expr& mu0);

/// Small-t constants:
///   alpha0 - 1/(4 a0 t) -> -c_R(0)/(4 a0) - a'(0)/(8 a0^2)
///   beta0 + 1/(2 a0 t)  ->  a'(0)/(4 a0^2)
///   gamma0 - 1/(4 a0 t) ->  c_R(0)/(4 a0) - a'(0)/(8 a0^2)
struct AsymptoticConstants {
  double a0 = 0;
  double alpha = 0;
  double beta = 0;
  double gamma = 0;
};
AsymptoticConstants asymptotic_constants(const QuadraticHamiltonian& h);

struct AsymptoticSeries {
  std::string name;
  double expected = 0;
  std::vector<double> t;
  std::vector<double> observed;   // f(t) - leading pole term
  std::vector<double> deviation;  // |observed - expected|
  /// log10(deviation ratio) per decade of t; >= 1 means O(t) convergence.
  double observed_order = 0;
};

struct AsymptoticReport {
  std::vector<AsymptoticSeries> series;  // alpha0, beta0, gamma0
};

/// Samples t in {1e-2, 1e-3, 1e-4}.
AsymptoticReport asymptotic_check(const RiccatiTriple& triple, const QuadraticHamiltonian& h);

struct RiccatiDirectOptions {
  /// Integration constant of mu = scale * exp(integral (4 a alpha + c_R)).
  Expr mu_scale = Expr(1L);
  /// Points at which alpha is checked against the alpha equation first.
  std::vector<double> check_points;
  double tolerance = 1e-8;
  /// Lower limit of the gamma quadrature when it has no closed form.
  AlgebraicScalar gamma_lower = AlgebraicScalar(1L);
};

struct RiccatiDirect {
  Expr mu;
  RiccatiTriple triple;
  /// True when gamma is a closed form, false when it holds an Integral node.
  bool gamma_closed = true;
};

/// Propagator data from a known solution alpha of the alpha equation:
/// mu from the inverse of alpha0's formula, beta = -1/mu, gamma = -integral a beta^2
/// (Integral node from gamma_lower when no closed form exists).
/// Throws std::invalid_argument when alpha fails the residual check.
RiccatiDirect riccati_direct(const Expr& alpha, const QuadraticHamiltonian& h, const RiccatiDirectOptions& opts = {});

}  // namespace liouvprop::propagator
