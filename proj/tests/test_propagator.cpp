#include "doctest.h"
#include "liouvprop/errors.hpp"
#include "liouvprop/liouville/calculus.hpp"
#include "liouvprop/propagator/propagator.hpp"

using namespace liouvprop;
using namespace liouvprop::liouville;
using namespace liouvprop::propagator;
using algebra::BigRational;

namespace {

QuadraticHamiltonian ince(const BigRational& lambda, const BigRational& omega) {
  std::map<std::string, BigRational> p{{"l", lambda}, {"w", omega}};
  return {parse("(1+(l/w)*cos(2*w*t))/2", p), parse("w^2*(1-(l/w)*cos(2*w*t))/2", p), parse("(l/2)*sin(2*w*t)", p),
          std::nullopt, "t"};
}

std::string canon(const Expr& e) { return to_string(simplify(expand(e))); }

double at(const Expr& e, double t) { return eval_complex(e, {{"t", t}}).real(); }

// gamma' + a beta^2 at t
double gamma_residual(const RiccatiTriple& tr, const QuadraticHamiltonian& h, double t) {
  Expr r = differentiate(tr.gamma0, "t") + h.a * tr.beta0 * tr.beta0;
  return std::abs(eval_complex(r, {{"t", t}}));
}

double alpha_residual(const RiccatiTriple& tr, const QuadraticHamiltonian& h, double t) {
  Expr r = differentiate(tr.alpha0, "t") + h.b + Expr(2L) * h.c_riccati() * tr.alpha0 +
           Expr(4L) * h.a * tr.alpha0 * tr.alpha0;
  return std::abs(eval_complex(r, {{"t", t}}));
}

double beta_residual(const RiccatiTriple& tr, const QuadraticHamiltonian& h, double t) {
  Expr r = differentiate(tr.beta0, "t") + (h.c_riccati() + Expr(4L) * h.a * tr.alpha0) * tr.beta0;
  return std::abs(eval_complex(r, {{"t", t}}));
}

}  // namespace

TEST_CASE("normalization") {
  auto h = ince(1, 1);
  auto n = normalize_solutions(parse("exp(-t)*(sin(t)-cos(t))"), parse("exp(t)*(sin(t)+cos(t))"), h);
  CHECK(n.mu0_coefficients == std::make_pair(AlgebraicScalar::rational(1, 2), AlgebraicScalar::rational(1, 2)));
  CHECK(n.mu1_coefficients == std::make_pair(AlgebraicScalar::rational(-1, 2), AlgebraicScalar::rational(1, 2)));
  CHECK(to_string(n.solutions.mu0) == canon(parse("sinh(t)*cos(t)+cosh(t)*sin(t)")));
  CHECK(to_string(n.solutions.mu1) == canon(parse("sinh(t)*sin(t)+cosh(t)*cos(t)")));

  QuadraticHamiltonian ho{rational(1, 4), Expr(1L), Expr(), std::nullopt, "t"};
  auto s = normalize_solutions(parse("sin(t)"), parse("cos(t)"), ho);
  CHECK(s.solutions.mu0 == parse("sin(t)/2"));
  CHECK(s.solutions.mu1 == parse("cos(t)"));

  auto k = ince(BigRational(5, 3), 1);
  auto nk = normalize_solutions(parse("exp(-5*t/3)*(sin(t)-cos(t))"), parse("exp(5*t/3)*(sin(t)+cos(t))"), k);
  CHECK(to_string(nk.solutions.mu0) == canon(parse("sin(t)*cosh(5*t/3)+cos(t)*sinh(5*t/3)")));

  CHECK_THROWS_AS(normalize_solutions(parse("sin(t)"), parse("2*sin(t)"), ho), DegenerateBasis);
  CHECK_THROWS_AS(normalize_solutions(parse("t*cos(1/t)"), parse("t*sin(1/t)"), ho), DegenerateBasis);
}

TEST_CASE("Riccati triple") {
  QuadraticHamiltonian toy2{parse("(t+1)/2"), Expr(), Expr(), std::nullopt, "t"};
  auto tr = build_triple({parse("t^2+2*t"), Expr(1L), {}}, toy2);
  CHECK(tr.alpha0 == parse("1/(t^2+2*t)"));
  CHECK(tr.beta0 * parse("t^2+2*t") == Expr(-1L));

  QuadraticHamiltonian ho{rational(1, 4), Expr(1L), Expr(), std::nullopt, "t"};
  auto tho = build_triple({parse("sin(t)/2"), parse("cos(t)"), {}}, ho);
  CHECK(at(tho.beta0, M_PI / 2) == doctest::Approx(-2.0));

  // lambda = omega = 1: x^2 and xy parts of the printed propagator.
  auto h = ince(1, 1);
  Expr mu0 = parse("sinh(t)*cos(t)+cosh(t)*sin(t)");
  Expr mu1 = parse("sinh(t)*sin(t)+cosh(t)*cos(t)");
  auto ti = build_triple({mu0, mu1, {}}, h);
  Expr printed_alpha = parse("(cos(t)*cosh(t)-sin(t)*sinh(t))") / (Expr(2L) * mu0);
  Expr printed_gamma = parse("(sin(t)*sinh(t)-cos(t)*cosh(t))") / (Expr(2L) * mu0);
  for (double t : {0.2, 0.7, 1.2}) {
    CHECK(at(ti.alpha0, t) == doctest::Approx(at(printed_alpha, t)).epsilon(1e-12));
    CHECK(at(ti.beta0 * mu0, t) == doctest::Approx(-1.0));
    CHECK(alpha_residual(ti, h, t) < 1e-10);
    CHECK(beta_residual(ti, h, t) < 1e-10);
    CHECK(gamma_residual(ti, h, t) < 1e-10);
    // the printed y^2 coefficient does not solve gamma' + a beta^2 = 0
    CHECK(gamma_residual({ti.alpha0, ti.beta0, printed_gamma}, h, t) > 1e-2);
  }
}

TEST_CASE("Green function and asymptotics") {
  auto h = ince(1, 1);
  Expr mu0 = parse("sinh(t)*cos(t)+cosh(t)*sin(t)");
  Expr mu1 = parse("sinh(t)*sin(t)+cosh(t)*cos(t)");
  auto tr = build_triple({mu0, mu1, {}}, h);
  auto g = build_green(tr, mu0);
  Bindings b{{"x", 0.3}, {"y", -0.4}, {"t", 0.5}};
  auto expected = std::exp(std::complex<double>(0, 1) * (at(tr.alpha0, 0.5) * 0.09 - at(tr.beta0, 0.5) * 0.12 +
                                                         at(tr.gamma0, 0.5) * 0.16)) /
                  std::sqrt(std::complex<double>(0, 2 * M_PI * at(mu0, 0.5)));
  CHECK(std::abs(eval_complex(g.closed_form, b) - expected) < 1e-12);

  auto report = asymptotic_check(tr, h);
  REQUIRE(report.series.size() == 3);
  for (const auto& s : report.series) {
    CAPTURE(s.name);
    CHECK(s.deviation.back() < 1e-3);
    CHECK(s.observed_order >= 0.9);
  }

  // c != 0: a = 1/4, b = 0, c = 1/2 gives mu'' = mu.
  QuadraticHamiltonian hc{rational(1, 4), Expr(), rational(1, 2), std::nullopt, "t"};
  auto eq = hc.characteristic().as_general();
  CHECK(eq.b1 == Expr());
  CHECK(eq.b0 == Expr(-1L));
  auto n = normalize_solutions(parse("sinh(t)"), parse("cosh(t)"), hc);
  auto tc = build_triple(n.solutions, hc);
  auto rc = asymptotic_check(tc, hc);
  CHECK(rc.series[0].observed_order >= 0.9);
  CHECK(rc.series[1].observed_order >= 0.9);
  CHECK(rc.series[2].observed_order < 0.1);
  CHECK(rc.series[2].deviation.back() == doctest::Approx(1.0).epsilon(1e-4));
  auto fixed = tc;
  fixed.gamma0 = gamma0_from_asymptotics(n.solutions, hc);
  CHECK(asymptotic_check(fixed, hc).series[2].observed_order >= 0.9);
}

TEST_CASE("propagator from a Riccati solution") {
  // toy 1: alpha' + cos(t) alpha^2 = 0
  auto h1 = QuadraticHamiltonian::from_riccati({Expr(), Expr(), parse("-cos(t)"), "t"});
  CHECK(h1.a == parse("cos(t)/4"));
  auto d1 = riccati_direct(parse("1/sin(t)"), h1, {Expr(2L), {0.3, 0.9}});
  CHECK(d1.mu == parse("2*sin(t)"));
  CHECK(d1.triple.beta0 == parse("-1/(2*sin(t))"));
  CHECK(d1.triple.gamma0 == parse("1/(16*sin(t))"));
  CHECK(d1.gamma_closed);

  // toy 2 with a0 = 1
  auto h2 = QuadraticHamiltonian::from_riccati({Expr(), Expr(), parse("-2*(t+1)"), "t"});
  auto d2 = riccati_direct(parse("1/(t^2+2*t)"), h2, {Expr(1L), {0.5, 1.5}});
  CHECK(d2.mu == parse("t^2+2*t"));
  CHECK(d2.triple.beta0 == parse("-1/(t^2+2*t)"));
  CHECK(structurally_equal(d2.triple.gamma0, parse("1/(4*(t^2+2*t))"), "t"));

  CHECK_THROWS_AS(riccati_direct(parse("1/t"), h2, {Expr(1L), {0.5}}), std::invalid_argument);

  // alpha = 0 with b = c = 0: beta constant, gamma linear in -integral a
  QuadraticHamiltonian free{rational(1, 4), Expr(), Expr(), std::nullopt, "t"};
  auto d3 = riccati_direct(Expr(), free, {Expr(1L), {0.5}});
  CHECK(d3.triple.beta0 == Expr(-1L));
  CHECK(d3.triple.gamma0 == parse("-t/4"));

  for (const auto& [d, h] : {std::make_pair(d1, h1), std::make_pair(d2, h2)}) {
    for (double t : {0.4, 0.8, 1.3}) {
      CHECK(alpha_residual(d.triple, h, t) < 1e-10);
      CHECK(beta_residual(d.triple, h, t) < 1e-10);
      CHECK(gamma_residual(d.triple, h, t) < 1e-10);
    }
  }
}
