#include <cmath>
#include <cstdlib>

#include "doctest.h"
#include "liouvprop/errors.hpp"
#include "liouvprop/verify/verify.hpp"

using namespace liouvprop;
using namespace liouvprop::liouville;
using namespace liouvprop::verify;
using propagator::QuadraticHamiltonian;
using algebra::BigRational;

namespace {

QuadraticHamiltonian ince(const BigRational& lambda, const BigRational& omega) {
  std::map<std::string, BigRational> p{{"l", lambda}, {"w", omega}};
  return {parse("(1+(l/w)*cos(2*w*t))/2", p), parse("w^2*(1-(l/w)*cos(2*w*t))/2", p), parse("(l/2)*sin(2*w*t)", p),
          std::nullopt, "t"};
}

const char* kInceMu0 = "sinh(t)*cos(t)+cosh(t)*sin(t)";
const char* kInceMu1 = "sinh(t)*sin(t)+cosh(t)*cos(t)";

SampleGrid pde_grid(const Expr& mu0) {
  SampleGrid g;
  g.axes = {{"x", -1, 1, 5}, {"y", -1, 1, 5}, {"t", 0.2, 1.2, 5}};
  g.keep = [mu0](const Bindings& b) { return std::abs(eval_complex(mu0, {{"t", b.at("t")}})) >= 0.05; };
  g.exclusion = "|mu0| < 0.05";
  return g;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

}  // namespace

TEST_CASE("grid") {
  auto g = SampleGrid::line("t", 0, 1, 5);
  auto p = g.points();
  REQUIRE(p.size() == 5);
  CHECK(p[2].at("t").real() == doctest::Approx(0.5));
  SampleGrid h;
  h.axes = {{"x", -1, 1, 3}, {"t", 0, 1, 2}};
  h.keep = [](const Bindings& b) { return b.at("x").real() != 0; };
  CHECK(h.points().size() == 4);
  CHECK(h.excluded() == 2);

  auto r = make_report("r", {1e-12, std::nan(""), 3e-11}, 1e-10, "g");
  CHECK(r.pass);
  CHECK(r.excluded == 1);
  CHECK(r.max == doctest::Approx(3e-11));
  CHECK_FALSE(make_report("empty", {}, 1, "g").pass);
}

TEST_CASE("threads") {
  setenv("LIOUVPROP_THREADS", "3", 1);
  CHECK(thread_count() == 3);
  auto p = SampleGrid::line("t", 0, 1, 101).points();
  auto serial = [&] {
    setenv("LIOUVPROP_THREADS", "1", 1);
    return parallel_map(p, [](const Bindings& b) { return std::sin(b.at("t").real()); });
  }();
  setenv("LIOUVPROP_THREADS", "4", 1);
  auto par = parallel_map(p, [](const Bindings& b) { return std::sin(b.at("t").real()); });
  CHECK(serial == par);
  CHECK_THROWS_AS(parallel_map(p, [](const Bindings&) -> double { throw std::logic_error("x"); }), std::logic_error);
  auto sing = parallel_map(p, [](const Bindings&) -> double { throw EvaluationSingularity("pole"); });
  CHECK(std::isnan(sing[0]));
  unsetenv("LIOUVPROP_THREADS");
}

TEST_CASE("ode residual") {
  auto h = ince(1, 1);
  auto ch = h.characteristic();
  auto grid = SampleGrid::line("t", 0.05, 0.75, 50);
  CHECK(ode_residual(parse(kInceMu0), ch, grid).pass);
  CHECK(ode_residual(parse(kInceMu1), ch, grid).pass);

  transforms::GeneralODE2 free{Expr(), Expr(), "t"};
  auto line = SampleGrid::line("t", 0, 2, 20);
  CHECK(ode_residual(parse("t"), free, line).max < 1e-14);
  // mu'' - mu = 0 is not solved by sin
  transforms::GeneralODE2 wrong{Expr(), Expr(-1L), "t"};
  auto r = ode_residual(parse("sin(t)"), wrong, line);
  CHECK_FALSE(r.pass);
  CHECK(r.max > 0.1);
}

TEST_CASE("finite-difference order") {
  auto f = [](double x) { return std::complex<double>(std::exp(std::sin(x)), std::cos(2 * x)); };
  auto d2 = [](double x) {
    double s = std::sin(x), c = std::cos(x);
    return std::complex<double>(std::exp(s) * (c * c - s), -4 * std::cos(2 * x));
  };
  auto d1 = [](double x) { return std::complex<double>(std::exp(std::sin(x)) * std::cos(x), -2 * std::sin(2 * x)); };
  double x = 0.37;
  double e1 = std::abs(d2_central4(f, x, 0.02) - d2(x));
  double e2 = std::abs(d2_central4(f, x, 0.01) - d2(x));
  CHECK(e1 / e2 >= 8);
  double g1 = std::abs(d1_central4(f, x, 0.02) - d1(x));
  double g2 = std::abs(d1_central4(f, x, 0.01) - d1(x));
  CHECK(g1 / g2 >= 8);
  double t1 = std::abs(d1_central2(f, x, 0.02) - d1(x));
  double t2 = std::abs(d1_central2(f, x, 0.01) - d1(x));
  CHECK(t1 / t2 >= 3);
}

TEST_CASE("PDE residual") {
  auto h = ince(1, 1);
  Expr mu0 = parse(kInceMu0);
  auto tr = propagator::build_triple({mu0, parse(kInceMu1), {}}, h);
  auto g = propagator::build_green(tr, mu0);
  auto grid = pde_grid(mu0);
  auto r = pde_residual(g.closed_form, h, grid);
  CAPTURE(r.max);
  CHECK(r.pass);
  // linear: scaling G does not change the relative residual
  auto r2 = pde_residual(Expr(2L) * g.closed_form, h, grid);
  CHECK(r2.max == doctest::Approx(r.max).epsilon(1e-6));
  // a wrong gamma breaks the equation
  auto bad = tr;
  bad.gamma0 = parse("(sin(t)*sinh(t)-cos(t)*cosh(t))") / (Expr(2L) * mu0);
  CHECK_FALSE(pde_residual(propagator::build_green(bad, mu0).closed_form, h, grid).pass);
}

TEST_CASE("RK4 Riccati system") {
  // toy 2 with a0 = 1: alpha = 1/(t^2+2t), beta = -alpha, gamma = alpha/4
  auto h = QuadraticHamiltonian::from_riccati({Expr(), Expr(), parse("-2*(t+1)"), "t"});
  auto exact = [](double t) {
    double a = 1 / (t * t + 2 * t);
    return RiccatiState{a, -a, a / 4};
  };
  auto path = rk4_riccati_system(h, 0.5, 1.5, 1e-3, exact(0.5), {1.0});
  for (double t : {1.0, 1.5}) {
    CHECK(rel(path.at(t).alpha, exact(t).alpha) < 1e-8);
    CHECK(rel(path.at(t).beta, exact(t).beta) < 1e-8);
    CHECK(rel(path.at(t).gamma, exact(t).gamma) < 1e-8);
  }
  CHECK_THROWS_AS(path.at(0.7), std::out_of_range);

  auto err = [&](double step) {
    return std::abs(rk4_riccati_system(h, 0.5, 1.5, step, exact(0.5)).at(1.5).alpha - exact(1.5).alpha);
  };
  double ratio = err(0.1) / err(0.05);
  CAPTURE(ratio);
  CHECK(ratio >= 12);
  CHECK(ratio <= 20);

  // alpha = 0 is an equilibrium when b = c = 0
  QuadraticHamiltonian free{rational(1, 4), Expr(), Expr(), std::nullopt, "t"};
  auto eq = rk4_riccati_system(free, 0.1, 1.0, 0.01, {0, -1, 0});
  CHECK(eq.at(1.0).alpha == 0);
  CHECK(eq.at(1.0).beta == -1);
  CHECK(eq.at(1.0).gamma == doctest::Approx(-0.9 / 4));

  CHECK_THROWS_AS(rk4_riccati_system(h, 0, 1, 0.1, exact(0.5)), std::invalid_argument);
  // alpha' = -alpha^2 with alpha(1) = -1 blows up at t = 2
  auto blow = QuadraticHamiltonian::from_riccati({Expr(), Expr(), Expr(-1L), "t"});
  CHECK_THROWS_AS(rk4_riccati_system(blow, 1.0, 3.0, 0.05, {-1, 0, 0}), StepSizeUnderflow);
}

TEST_CASE("RK4 from asymptotic seeds") {
  auto h = ince(1, 1);
  Expr mu0 = parse(kInceMu0);
  auto tr = propagator::build_triple({mu0, parse(kInceMu1), {}}, h);
  auto path = rk4_riccati_system(h, 1e-7, 1.0, 2e-3, asymptotic_seed(h, 1e-7), {0.3, 0.5});
  for (double t : {0.3, 0.5, 1.0}) {
    Bindings b{{"t", t}};
    CAPTURE(t);
    CHECK(rel(path.at(t).alpha, eval_complex(tr.alpha0, b).real()) < 1e-6);
    CHECK(rel(path.at(t).beta, eval_complex(tr.beta0, b).real()) < 1e-6);
    CHECK(rel(path.at(t).gamma, eval_complex(tr.gamma0, b).real()) < 1e-6);
  }
}

TEST_CASE("Wronskian") {
  transforms::GeneralODE2 ho{Expr(), Expr(1L), "t"};
  auto grid = SampleGrid::line("t", 0, 3, 13);
  auto w = wronskian_check(parse("sin(t)/2"), parse("2*cos(t)"), ho, grid);
  CHECK(w.report.pass);
  CHECK(w.w0.real() == doctest::Approx(-1.0));
  CHECK(std::abs(wronskian_at(parse("sin(t)"), parse("sin(t)"), "t", 0.4)) < 1e-15);

  // friction -2 tan(t): W grows like exp(integral 2 tan)
  auto ch = ince(1, 1).characteristic().as_general();
  auto wi = wronskian_check(parse(kInceMu0), parse(kInceMu1), ch, SampleGrid::line("t", 0, 1.2, 9));
  CAPTURE(wi.report.max);
  CHECK(wi.report.pass);
  CHECK(wi.w0.real() == doctest::Approx(-2 * 1.0));
  transforms::GeneralODE2 none{Expr(), ch.b0, "t"};
  CHECK_FALSE(wronskian_check(parse(kInceMu0), parse(kInceMu1), none, SampleGrid::line("t", 0, 1.2, 9)).report.pass);
}
