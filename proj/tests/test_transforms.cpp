#include "doctest.h"
#include "liouvprop/errors.hpp"
#include "liouvprop/liouville/calculus.hpp"
#include "liouvprop/transforms/catalog.hpp"
#include "liouvprop/transforms/transforms.hpp"

using namespace liouvprop;
using namespace liouvprop::liouville;
using namespace liouvprop::transforms;
using algebra::BigRational;

namespace {

RationalFunction rf(const std::string& text, const std::string& v = "tau") {
  auto r = to_rational(parse(text), v);
  REQUIRE(r.has_value());
  return *r;
}

bool same_rational(const Expr& a, const std::string& b, const std::string& v = "tau") {
  auto ra = to_rational(a, v);
  return ra && *ra == rf(b, v);
}

// Ince coefficients from the degenerate parametric oscillator with m = 1.
CharacteristicEq ince(const BigRational& lambda, const BigRational& omega) {
  std::map<std::string, BigRational> p{{"l", lambda}, {"w", omega}};
  return characteristic_from_hamiltonian(parse("(1+(l/w)*cos(2*w*t))/2", p), parse("w^2*(1-(l/w)*cos(2*w*t))/2", p),
                                         parse("(l/2)*sin(2*w*t)", p));
}

double residual_general(const Expr& y, const GeneralODE2& g, double at) {
  Expr res = differentiate(differentiate(y, g.var), g.var) + g.b1 * differentiate(y, g.var) + g.b0 * y;
  return std::abs(eval_complex(res, {{g.var, at}}));
}

}  // namespace

TEST_CASE("reduce_general") {
  auto red = reduce_general({parse("4*tau/(1+tau^2)"), parse("-2/(1+tau^2)^2"), "tau"});
  CHECK(red.reduced().r == rf("(2*tau^2+4)/(1+tau^2)^2"));
  CHECK(red.multiplier == parse("1/(1+tau^2)"));

  auto trivial = reduce_general({Expr(), parse("tau^2+3"), "tau"});
  CHECK(trivial.reduced().r == rf("-tau^2-3"));
  CHECK(trivial.multiplier == Expr(1L));

  auto t = reduce_general({parse("cos(t)"), Expr(), "t"});
  CHECK_THROWS_AS(t.reduced(), NonRationalResult);
  CHECK(t.multiplier.kind() == Kind::Exp);

  // Wronskian relation and solution transport on the Ince instance.
  GeneralODE2 g{parse("4*tau/(1+tau^2)"), parse("-2/(1+tau^2)^2"), "tau"};
  Expr xi = parse("exp(arctan(tau))*(tau+1)*sqrt(1+tau^2)");
  Expr r = red.rho;
  Expr resid = differentiate(differentiate(xi, "tau"), "tau") - r * xi;
  for (double v : {-1.3, 0.2, 0.9, 2.5}) CHECK(std::abs(eval_complex(resid, {{"tau", v}})) < 1e-10);
  for (double v : {-1.3, 0.2, 0.9, 2.5}) CHECK(residual_general(xi * red.multiplier, g, v) < 1e-10);
}

TEST_CASE("riccati maps") {
  auto a = riccati_to_reduced({Expr(), Expr(), Expr(-1L), "tau"});
  CHECK(a.r == Expr());
  CHECK(a.alpha_shift == Expr());
  CHECK(a.beta_scale == Expr(1L));

  // alpha' + b + 4c alpha + 4a alpha^2 = 0 with a = 1/4, b = 1, c = 0
  auto ho = riccati_to_reduced({Expr(-1L), Expr(), Expr(-1L), "t"});
  CHECK(ho.r == Expr(-1L));

  // toy 2: alpha' + 2(t+a0) alpha^2 = 0, a0 = 1; alpha = 1/(t^2+2t)
  RiccatiGeneral toy2{Expr(), Expr(), parse("-2*(t+1)"), "t"};
  auto t2 = riccati_to_reduced(toy2);
  Expr alpha = parse("1/(t^2+2*t)");
  Expr w = (alpha - t2.alpha_shift) / t2.beta_scale;
  Expr res = differentiate(w, "t") - t2.r + w * w;
  for (double v : {0.3, 0.8, 1.7}) CHECK(std::abs(eval_complex(res, {{"t", v}})) < 1e-10);

  auto rr = ode_to_riccati(ReducedODE{rf("2/tau^2")});
  Expr w2 = parse("2/tau");
  CHECK(expand(differentiate(w2, "tau") - (rr.a0 + rr.a2 * w2 * w2)) == Expr());
  auto r0 = ode_to_riccati(ReducedODE{rf("0")});
  Expr w0 = parse("1/tau");
  CHECK(expand(differentiate(w0, "tau") - (r0.a0 + r0.a2 * w0 * w0)) == Expr());

  // reduce_general, ode_to_riccati and riccati_to_reduced agree.
  for (const auto& [b1, b0] : std::vector<std::pair<std::string, std::string>>{
           {"4*tau/(1+tau^2)", "-2/(1+tau^2)^2"}, {"1/tau", "3"}, {"tau^2", "1/(tau-1)"}}) {
    GeneralODE2 g{parse(b1), parse(b0), "tau"};
    auto via_riccati = riccati_to_reduced(ode_to_riccati(g));
    CHECK(to_rational(via_riccati.r, "tau").value() == reduce_general(g).reduced().r);
  }
}

TEST_CASE("characteristic equation") {
  auto ho = characteristic_from_hamiltonian(rational(1, 4), Expr(1L), Expr());
  CHECK(ho.tau_t == Expr());
  CHECK(Expr(4L) * ho.sigma_t == Expr(1L));

  auto cosine = characteristic_from_hamiltonian(parse("cos(t)/4"), Expr(), Expr());
  CHECK(cosine.sigma_t == Expr());
  CHECK(cosine.tau_t == -sin(var("t")) * pow(cos(var("t")), AlgebraicScalar(-1L)));
  Expr mu = parse("2*sin(t)");
  for (double v : {0.2, 0.7, 1.1}) CHECK(residual_general(mu, cosine.as_general(), v) < 1e-12);

  // lambda = omega = 1: friction 2 tan t, constant -2.
  auto eq = ince(1, 1);
  auto g = eq.as_general();
  for (double v : {0.1, 0.5, 1.2}) {
    CHECK(std::abs(eval_complex(g.b1 - parse("2*tan(t)"), {{"t", v}})) < 1e-12);
    CHECK(std::abs(eval_complex(g.b0, {{"t", v}}) + 2.0) < 1e-12);
  }
  for (double v : {0.1, 0.5, 1.2}) CHECK(residual_general(parse("sinh(t)*cos(t)+cosh(t)*sin(t)"), g, v) < 1e-10);
}

TEST_CASE("catalog and algebrization") {
  const auto& cat = Catalog::builtin();
  CHECK(cat.keys() == std::vector<std::string>{"cos", "exp", "identity", "tan"});
  for (const auto& key : cat.keys()) {
    for (BigRational rate : {BigRational(1), BigRational(5, 3)}) {
      auto cov = cat.instantiate(key, rate);
      CHECK_MESSAGE(cov.consistency_error() < 1e-10, key);
    }
  }
  CHECK_THROWS_AS(cat.instantiate("sec", 1), ProblemError);

  auto tan1 = cat.instantiate("tan", 1);
  auto g = algebrize(ince(1, 1).as_general(), tan1);
  CHECK(g.b1 == from_rational(rf("4*tau/(1+tau^2)")));
  CHECK(g.b0 == from_rational(rf("-2/(1+tau^2)^2")));
  CHECK(reduce_general(g).reduced().r == rf("(2*tau^2+4)/(1+tau^2)^2"));

  auto trivial = algebrize({Expr(), Expr(), "t"}, tan1);
  CHECK(same_rational(trivial.b1, "2*tau/(1+tau^2)"));
  CHECK(trivial.b0 == Expr());

  // kappa = lambda/omega with omega = 1.
  for (BigRational kappa : {BigRational(5, 3), BigRational(5, 4), BigRational(3)}) {
    auto gk = algebrize(ince(kappa, 1).as_general(), tan1);
    std::map<std::string, BigRational> p{{"k", kappa}};
    auto phi1 = to_rational(parse("(2*(k-1)*tau^3-2*(3*k+1)*tau)/((1+tau^2)*((k-1)*tau^2-k-1))", p), "tau");
    CHECK(to_rational(gk.b1, "tau").value() == *phi1);
    auto red = reduce_general(gk);
    auto ratio = numeric_ratio(red.multiplier, parse("sqrt((k-1)*tau^2-1-k)/(1+tau^2)", p), "tau", {2.5, 3.0, 4.5});
    CHECK(ratio.has_value());
  }

  CHECK_THROWS_AS(algebrize({parse("t"), Expr(), "t"}, tan1), RewriteIncomplete);
  CHECK_THROWS_AS(algebrize({parse("sin(3*t)"), Expr(), "t"}, tan1), RewriteIncomplete);

  auto ex = cat.instantiate("exp", 2);
  auto ge = algebrize({Expr(), parse("exp(4*t)"), "t"}, ex);
  CHECK(same_rational(ge.b1, "1/tau"));
  CHECK(same_rational(ge.b0, "1/4"));

  auto id = cat.instantiate("identity", 1);
  auto gi = algebrize({parse("1/t"), parse("t^2"), "t"}, id);
  CHECK(same_rational(gi.b1, "1/tau"));
  CHECK(same_rational(gi.b0, "tau^2"));
}

TEST_CASE("back substitution") {
  const auto& cat = Catalog::builtin();
  auto tan1 = cat.instantiate("tan", 1);
  auto b = back_substitute(parse("exp(arctan(tau))*(tau+1)/sqrt(1+tau^2)"), tan1);
  CHECK(b.complete);
  CHECK(to_string(b.result) == to_string(expand(parse("exp(t)*(sin(t)+cos(t))"))));
  CHECK(b.window.hi == doctest::Approx(M_PI / 2));

  CHECK(back_substitute(var("tau"), tan1).result == parse("sin(t)/cos(t)"));

  auto tanw = cat.instantiate("tan", 1);
  BigRational kappa(5, 3);
  auto sol = back_substitute(parse("exp(k*arctan(tau))*(tau+1)/sqrt(1+tau^2)", {{"k", kappa}}), tanw);
  CHECK(to_string(sol.result) == to_string(expand(parse("exp(5*t/3)*(sin(t)+cos(t))"))));

  auto cs = cat.instantiate("cos", 2);
  auto c = back_substitute(parse("sqrt(1-tau^2)"), cs);
  CHECK(to_string(c.result) == "sin(2*t)");
  CHECK(c.window.hi == doctest::Approx(M_PI / 2));
}
