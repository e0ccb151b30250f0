#include "liouvprop/cli/properties.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include "liouvprop/algebra/numbers.hpp"
#include "liouvprop/cli/targets.hpp"
#include "liouvprop/kovacic/kovacic.hpp"
#include "liouvprop/liouville/calculus.hpp"
#include "liouvprop/parser/parser.hpp"
#include "liouvprop/verify/verify.hpp"

namespace liouvprop::cli {

using algebra::GaussianRational;
using algebra::make_rational;
using algebra::RationalFunction;
using liouville::Expr;
using C = std::complex<double>;

namespace {

GaussianRational random_gaussian(std::mt19937_64& rng, int height) {
  std::uniform_int_distribution<long> num(-height, height);
  std::uniform_int_distribution<long> den(1, height);
  return {make_rational(num(rng), den(rng)), make_rational(num(rng), den(rng))};
}

parser::NodePtr random_tree(std::mt19937_64& rng, int depth) {
  using parser::Node;
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 8);
  static const std::vector<std::string> syms = {"t", "tau", "x", "l", "w", "i"};
  static const std::vector<std::string> funcs = parser::known_functions();
  switch (pick(rng)) {
    case 0:
      return parser::make_integer(std::uniform_int_distribution<long>(0, 20)(rng));
    case 1:
      return parser::make_symbol(syms[std::uniform_int_distribution<std::size_t>(0, syms.size() - 1)(rng)]);
    case 2:
      return parser::make_unary(Node::Kind::Neg, random_tree(rng, depth - 1));
    case 3:
      return parser::make_binary(Node::Kind::Add, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 4:
      return parser::make_binary(Node::Kind::Sub, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 5:
      return parser::make_binary(Node::Kind::Mul, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 6:
      return parser::make_binary(Node::Kind::Div, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 7:
      return parser::make_binary(Node::Kind::Pow, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    default:
      return parser::make_call(funcs[std::uniform_int_distribution<std::size_t>(0, funcs.size() - 1)(rng)],
                               random_tree(rng, depth - 1));
  }
}

// Integrands: a fixed list plus every rational function the
// built-in pipelines integrate (reduction exponents and Kovacic witnesses).
std::vector<std::pair<std::string, RationalFunction>> integration_corpus() {
  std::vector<std::pair<std::string, RationalFunction>> out;
  for (const char* text : {"1/tau", "2*tau/(1+tau^2)", "1/(1+tau^2)", "(2*tau^2+4)/(1+tau^2)^2",
                           "(tau^3+1)/(tau^2-4)", "1/(tau^2+tau+1)", "3/(tau-1)^3+tau^2",
                           "(1+2*i)/(tau-i)+(1-2*i)/(tau+i)"}) {
    out.emplace_back(text, *liouville::to_rational(liouville::parse(text), "tau"));
  }
  std::vector<std::pair<std::string, Problem>> problems = {
      {"ince 1/1", ince(1, 1)}, {"ince 5/3", ince(5, 3)}, {"ince 5/4", ince(5, 4)}, {"tn -2", tn(-2)}};
  for (const auto& [label, p] : problems) {
    transforms::GeneralODE2 g = p.hamiltonian->characteristic().as_general();
    if (p.cov) g = transforms::algebrize(g, *p.cov);
    if (auto b1 = liouville::to_rational(g.b1, g.var)) out.emplace_back(label + " b1", *b1);
    auto red = transforms::reduce_general(g);
    auto k = kovacic::solve(red.reduced(), {true});
    int n = 0;
    if (k.case1) {
      for (const auto& w : k.case1->witnesses) out.emplace_back(label + " omega " + std::to_string(++n), w.omega);
    }
    if (k.case2 && k.case2->omegas) {
      out.emplace_back(label + " omega+", k.case2->omegas->first);
      out.emplace_back(label + " omega-", k.case2->omegas->second);
    }
  }
  return out;
}

}  // namespace

PropertyResult field_axioms(std::uint64_t seed, int cases) {
  PropertyResult r{"algebra field axioms", 0, 0, ""};
  std::mt19937_64 rng(seed);
  for (int k = 0; k < cases; ++k) {
    int height = 1 + k % 7;
    GaussianRational a = random_gaussian(rng, height);
    GaussianRational b = random_gaussian(rng, height);
    GaussianRational c = random_gaussian(rng, height);
    bool ok = (a + b) + c == a + (b + c) && (a * b) * c == a * (b * c) && a * (b + c) == a * b + a * c &&
              a + b == b + a && a * b == b * a && a - a == GaussianRational(0);
    if (!b.is_zero()) ok = ok && (a / b) * b == a && b * b.inverse() == GaussianRational(1);
    ++r.cases;
    if (!ok) ++r.failures;
  }
  return r;
}

PropertyResult parser_round_trip(std::uint64_t seed, int cases) {
  PropertyResult r{"parser round trip", 0, 0, ""};
  std::mt19937_64 rng(seed);
  for (int k = 0; k < cases; ++k) {
    auto tree = random_tree(rng, 1 + k % 6);
    std::string text = parser::print(*tree);
    ++r.cases;
    try {
      auto back = parser::parse_expression(text);
      if (!parser::structurally_equal(*tree, *back) || parser::print(*back) != text) {
        ++r.failures;
        if (r.detail.empty()) r.detail = "first failure: " + text;
      }
    } catch (const std::exception& e) {
      ++r.failures;
      if (r.detail.empty()) r.detail = "first failure: " + text + " (" + e.what() + ")";
    }
  }
  return r;
}

PropertyResult integrate_identity() {
  PropertyResult r{"differentiate . integrate", 0, 0, ""};
  for (const auto& [label, f] : integration_corpus()) {
    ++r.cases;
    const std::string& v = f.var();
    Expr F = liouville::integrate_rational(f).to_expr();
    Expr diff = liouville::simplify(liouville::expand(liouville::differentiate(F, v) - liouville::from_rational(f)));
    bool ok = diff.is_zero();
    if (!ok) {
      // the symbolic normal form can miss cancellations between surds
      ok = true;
      for (double x : {0.3, 0.7, 1.3, 2.9}) {
        C want = f.evaluate(C(x, 0));
        C got = liouville::eval_complex(diff, {{v, x}});
        ok = ok && std::abs(got) <= 1e-9 * std::max(1.0, std::abs(want));
      }
    }
    Expr ef = liouville::exp_integral(f);
    Expr log_der = liouville::differentiate(ef, v) / ef;
    for (double x : {0.3, 0.7, 1.3, 2.9}) {
      C want = f.evaluate(C(x, 0));
      ok = ok && std::abs(liouville::eval_complex(log_der, {{v, x}}) - want) <= 1e-9 * std::max(1.0, std::abs(want));
    }
    if (!ok) {
      ++r.failures;
      r.detail += label + "; ";
    }
  }
  return r;
}

PropertyResult finite_difference_order() {
  PropertyResult r{"finite-difference order", 0, 0, ""};
  auto f = [](double x) { return C(std::exp(std::sin(x)), std::cos(2 * x)); };
  auto d2 = [](double x) {
    double s = std::sin(x), c = std::cos(x);
    return C(std::exp(s) * (c * c - s), -4 * std::cos(2 * x));
  };
  auto d1 = [](double x) { return C(std::exp(std::sin(x)) * std::cos(x), -2 * std::sin(2 * x)); };
  std::ostringstream d;
  for (double x : {0.37, 1.1, 2.3}) {
    double e2 = std::abs(verify::d2_central4(f, x, 0.02) - d2(x)) / std::abs(verify::d2_central4(f, x, 0.01) - d2(x));
    double e1 = std::abs(verify::d1_central4(f, x, 0.02) - d1(x)) / std::abs(verify::d1_central4(f, x, 0.01) - d1(x));
    double e0 = std::abs(verify::d1_central2(f, x, 0.02) - d1(x)) / std::abs(verify::d1_central2(f, x, 0.01) - d1(x));
    // halving h divides the error by 2^order
    r.cases += 3;
    r.failures += (e2 < 12) + (e1 < 12) + (e0 < 3);
    d << "x=" << x << ": d2 ratio " << e2 << ", d1 ratio " << e1 << ", d1 2nd-order ratio " << e0 << "; ";
  }
  r.detail = d.str();
  return r;
}

PropertyResult rk4_order() {
  PropertyResult r{"RK4 order", 0, 0, ""};
  auto h = propagator::QuadraticHamiltonian::from_riccati({Expr(0L), Expr(0L), liouville::parse("-2*(t+1)"), "t"});
  auto exact = [](double t) {
    double a = 1 / (t * t + 2 * t);
    return verify::RiccatiState{a, -a, a / 4};
  };
  auto err = [&](double step) {
    return std::abs(verify::rk4_riccati_system(h, 0.5, 1.5, step, exact(0.5)).at(1.5).alpha - exact(1.5).alpha);
  };
  double ratio = err(0.1) / err(0.05);
  r.cases = 1;
  r.failures = (ratio >= 12 && ratio <= 20) ? 0 : 1;
  std::ostringstream d;
  d << "error ratio for halved step " << ratio << " (expected near 16)";
  r.detail = d.str();
  return r;
}

std::vector<PropertyResult> run_properties(std::uint64_t seed) {
  return {field_axioms(seed), parser_round_trip(seed + 1), integrate_identity(), finite_difference_order(),
          rk4_order()};
}

}  // namespace liouvprop::cli
