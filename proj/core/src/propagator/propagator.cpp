#include "liouvprop/propagator/propagator.hpp"

#include <cmath>
#include <stdexcept>

#include "liouvprop/errors.hpp"
#include "liouvprop/liouville/calculus.hpp"

namespace liouvprop::propagator {

using namespace liouville;

namespace {

AlgebraicScalar require_at_zero(const Expr& e, const std::string& v, const std::string& what) {
  auto x = value_at_zero(e, v);
  if (!x) throw DegenerateBasis(what + " does not evaluate exactly at " + v + " = 0: " + to_string(e));
  return *x;
}

double real_at(const Expr& e, const std::string& v, double t) { return eval_complex(e, {{v, t}}).real(); }

Expr tidy(const Expr& e) { return simplify(expand(e)); }

}  // namespace

transforms::CharacteristicEq QuadraticHamiltonian::characteristic() const {
  return transforms::characteristic_from_hamiltonian(a, b, c, var);
}

QuadraticHamiltonian QuadraticHamiltonian::from_riccati(const transforms::RiccatiGeneral& ric) {
  QuadraticHamiltonian h;
  h.a = Expr(AlgebraicScalar::rational(-1, 4)) * ric.a2;
  h.b = -ric.a0;
  h.c = Expr(AlgebraicScalar::rational(-1, 4)) * ric.a1;
  h.var = ric.var;
  return h;
}

std::optional<AlgebraicScalar> value_at_zero(const Expr& e, const std::string& var) {
  try {
    return exact_value(substitute(e, var, Expr()));
  } catch (const EvaluationSingularity&) {
    return std::nullopt;
  }
}

Normalization normalize_solutions(const Expr& f, const Expr& g, const QuadraticHamiltonian& h,
                                  const DomainWindow& window, const AlgebraicScalar& mu1_at_zero) {
  const std::string& v = h.var;
  AlgebraicScalar f0 = require_at_zero(f, v, "basis element");
  AlgebraicScalar g0 = require_at_zero(g, v, "basis element");
  AlgebraicScalar f1 = require_at_zero(differentiate(f, v), v, "basis derivative");
  AlgebraicScalar g1 = require_at_zero(differentiate(g, v), v, "basis derivative");
  AlgebraicScalar a0 = require_at_zero(h.a, v, "a");
  if (a0.is_zero()) throw DegenerateBasis("a(0) = 0");
  AlgebraicScalar det = f0 * g1 - g0 * f1;
  if (det.is_zero()) throw DegenerateBasis("basis is singular at " + v + " = 0");

  // [f0 g0; f1 g1] [C1; C2] = [u; w]
  auto solve = [&](const AlgebraicScalar& u, const AlgebraicScalar& w) {
    return std::make_pair((u * g1 - g0 * w) / det, (f0 * w - u * f1) / det);
  };
  Normalization out;
  out.mu0_coefficients = solve(AlgebraicScalar(), AlgebraicScalar(2L) * a0);
  out.mu1_coefficients = solve(mu1_at_zero, AlgebraicScalar());
  auto combine = [&](const std::pair<AlgebraicScalar, AlgebraicScalar>& c) {
    return simplify(to_hyperbolic(Expr(c.first) * f + Expr(c.second) * g));
  };
  out.solutions = {combine(out.mu0_coefficients), combine(out.mu1_coefficients), window};
  return out;
}

RiccatiTriple build_triple(const CharacteristicSolutions& cs, const QuadraticHamiltonian& h) {
  const std::string& v = h.var;
  Expr four_a = Expr(4L) * h.a;
  AlgebraicScalar a0 = require_at_zero(h.a, v, "a");
  AlgebraicScalar c0 = require_at_zero(h.c_riccati(), v, "c");
  AlgebraicScalar m10 = require_at_zero(cs.mu1, v, "mu1");
  RiccatiTriple t;
  t.alpha0 = tidy(differentiate(cs.mu0, v) / (four_a * cs.mu0) - h.c_riccati() / four_a);
  t.beta0 = -pow(cs.mu0, AlgebraicScalar(-1L));
  t.gamma0 = cs.mu1 / (Expr(AlgebraicScalar(2L) * m10) * cs.mu0) + Expr(c0 / (AlgebraicScalar(2L) * a0));
  return t;
}

Expr gamma0_from_asymptotics(const CharacteristicSolutions& cs, const QuadraticHamiltonian& h) {
  const std::string& v = h.var;
  AlgebraicScalar a0 = require_at_zero(h.a, v, "a");
  AlgebraicScalar c0 = require_at_zero(h.c_riccati(), v, "c");
  AlgebraicScalar m10 = require_at_zero(cs.mu1, v, "mu1");
  return cs.mu1 / (Expr(AlgebraicScalar(2L) * m10) * cs.mu0) + Expr(c0 / (AlgebraicScalar(4L) * a0));
}

GreenFunction build_green(const RiccatiTriple& triple, const Expr& mu0) {
  Expr x = var("x");
  Expr y = var("y");
  Expr prefactor = pow(Expr(2L) * pi() * imag_unit() * mu0, AlgebraicScalar::rational(-1, 2));
  Expr phase = triple.alpha0 * x * x + triple.beta0 * x * y + triple.gamma0 * y * y;
  return {triple, mu0, prefactor * exp(imag_unit() * phase)};
}

AsymptoticConstants asymptotic_constants(const QuadraticHamiltonian& h) {
  const std::string& v = h.var;
  double a0 = real_at(h.a, v, 0.0);
  double da0 = real_at(differentiate(h.a, v), v, 0.0);
  double c0 = real_at(h.c_riccati(), v, 0.0);
  AsymptoticConstants k;
  k.a0 = a0;
  k.alpha = -c0 / (4 * a0) - da0 / (8 * a0 * a0);
  k.beta = da0 / (4 * a0 * a0);
  k.gamma = c0 / (4 * a0) - da0 / (8 * a0 * a0);
  return k;
}

AsymptoticReport asymptotic_check(const RiccatiTriple& triple, const QuadraticHamiltonian& h) {
  const std::string& v = h.var;
  AsymptoticConstants k = asymptotic_constants(h);
  struct Spec {
    const char* name;
    const Expr* f;
    double pole;
    double expected;
  };
  const Spec specs[] = {{"alpha0", &triple.alpha0, 1.0 / (4 * k.a0), k.alpha},
                        {"beta0", &triple.beta0, -1.0 / (2 * k.a0), k.beta},
                        {"gamma0", &triple.gamma0, 1.0 / (4 * k.a0), k.gamma}};
  AsymptoticReport out;
  for (const auto& s : specs) {
    AsymptoticSeries series;
    series.name = s.name;
    series.expected = s.expected;
    for (double t : {1e-2, 1e-3, 1e-4}) {
      double obs = real_at(*s.f, v, t) - s.pole / t;
      series.t.push_back(t);
      series.observed.push_back(obs);
      series.deviation.push_back(std::abs(obs - s.expected));
    }
    double d0 = series.deviation.front();
    double d2 = series.deviation.back();
    series.observed_order = d2 > 0 && d0 > 0 ? std::log10(d0 / d2) / 2.0 : INFINITY;
    out.series.push_back(series);
  }
  return out;
}

RiccatiDirect riccati_direct(const Expr& alpha, const QuadraticHamiltonian& h, const RiccatiDirectOptions& opts) {
  const std::string& v = h.var;
  Expr cr = h.c_riccati();
  Expr four_a = Expr(4L) * h.a;
  Expr da = differentiate(alpha, v);
  for (double t : opts.check_points) {
    Bindings b{{v, t}};
    std::complex<double> terms[] = {eval_complex(da, b), eval_complex(h.b, b),
                                    eval_complex(Expr(2L) * cr * alpha, b),
                                    eval_complex(four_a * alpha * alpha, b)};
    std::complex<double> sum = 0;
    double scale = 1;
    for (const auto& x : terms) {
      sum += x;
      scale += std::abs(x);
    }
    if (std::abs(sum) / scale > opts.tolerance) {
      throw std::invalid_argument("alpha does not solve the Riccati equation at " + v + " = " + std::to_string(t));
    }
  }

  RiccatiDirect out;
  Expr rate = tidy(four_a * alpha + cr);
  if (auto F = antiderivative(rate, v)) {
    out.mu = tidy(opts.mu_scale * exp(*F));
  } else {
    Expr integrand = substitute(rate, v, var("s"));
    out.mu = opts.mu_scale * exp(integral(integrand, "s", opts.gamma_lower, var(v)));
  }
  out.triple.alpha0 = alpha;
  out.triple.beta0 = tidy(-pow(out.mu, AlgebraicScalar(-1L)));
  Expr gamma_rate = tidy(-h.a * out.triple.beta0 * out.triple.beta0);
  if (auto G = antiderivative(gamma_rate, v)) {
    out.triple.gamma0 = tidy(*G);
  } else {
    out.triple.gamma0 = integral(substitute(gamma_rate, v, var("s")), "s", opts.gamma_lower, var(v));
    out.gamma_closed = false;
  }
  return out;
}

}  // namespace liouvprop::propagator
