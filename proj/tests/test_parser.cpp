#include <random>

#include "doctest.h"
#include "liouvprop/parser/parser.hpp"
#include "liouvprop/parser/problem.hpp"

using namespace liouvprop;
using namespace liouvprop::parser;

namespace {

NodePtr random_tree(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 8);
  static const std::vector<std::string> syms = {"t", "tau", "x", "l", "w", "i"};
  static const std::vector<std::string> funcs = known_functions();
  switch (pick(rng)) {
    case 0:
      return make_integer(std::uniform_int_distribution<long>(0, 20)(rng));
    case 1:
      return make_symbol(syms[std::uniform_int_distribution<std::size_t>(0, syms.size() - 1)(rng)]);
    case 2:
      return make_unary(Node::Kind::Neg, random_tree(rng, depth - 1));
    case 3:
      return make_binary(Node::Kind::Add, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 4:
      return make_binary(Node::Kind::Sub, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 5:
      return make_binary(Node::Kind::Mul, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 6:
      return make_binary(Node::Kind::Div, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 7:
      return make_binary(Node::Kind::Pow, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    default:
      return make_call(funcs[std::uniform_int_distribution<std::size_t>(0, funcs.size() - 1)(rng)],
                       random_tree(rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("precedence and associativity") {
  auto e = parse_expression("(2*t^2+4)/(1+t^2)^2");
  REQUIRE(e->kind == Node::Kind::Div);
  CHECK(e->children[1]->kind == Node::Kind::Pow);
  CHECK(print(*e) == "(2*t^2+4)/(1+t^2)^2");

  auto p = parse_expression("a^b^c");
  REQUIRE(p->kind == Node::Kind::Pow);
  CHECK(p->children[1]->kind == Node::Kind::Pow);

  auto n = parse_expression("-t^2");
  REQUIRE(n->kind == Node::Kind::Neg);
  CHECK(n->children[0]->kind == Node::Kind::Pow);

  auto s = parse_expression("a-b-c");
  REQUIRE(s->kind == Node::Kind::Sub);
  CHECK(s->children[0]->kind == Node::Kind::Sub);

  auto ex = parse_expression("t^-1");
  CHECK(ex->children[1]->kind == Node::Kind::Neg);

  auto f = parse_expression("tan(l*t)");
  REQUIRE(f->kind == Node::Kind::Call);
  CHECK(f->name == "tan");
  CHECK(free_symbols(*f) == std::set<std::string>{"l", "t"});
}

TEST_CASE("syntax errors carry spans and expected sets") {
  try {
    parse_expression("1+");
    FAIL("no error");
  } catch (const SyntaxError& e) {
    CHECK(e.span().start == 2);
    CHECK_FALSE(e.expected().empty());
  }
  CHECK_THROWS_AS(parse_expression("2t"), SyntaxError);
  CHECK_THROWS_AS(parse_expression("foo(t)"), SyntaxError);
  CHECK_THROWS_AS(parse_expression("sin t"), SyntaxError);
  CHECK_THROWS_AS(parse_expression("(1+t"), SyntaxError);
  CHECK_THROWS_AS(parse_expression("1)"), SyntaxError);
  CHECK_THROWS_AS(parse_expression("1 $ 2"), SyntaxError);
  CHECK_THROWS_AS(parse_expression(""), SyntaxError);

  std::mt19937_64 rng(99);
  const std::string alphabet = "t1+-*/^() $x";
  for (int k = 0; k < 500; ++k) {
    std::string s;
    int len = std::uniform_int_distribution<int>(0, 8)(rng);
    for (int j = 0; j < len; ++j) s += alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)];
    try {
      parse_expression(s);
    } catch (const SyntaxError& e) {
      REQUIRE(e.span().start <= e.span().end);
      REQUIRE(e.span().end <= s.size());
      REQUIRE_FALSE(e.expected().empty());
    }
  }
}

TEST_CASE("printer round trip on random trees") {
  std::mt19937_64 rng(12345);
  for (int k = 0; k < 1000; ++k) {
    NodePtr tree = random_tree(rng, 1 + k % 6);
    std::string text = print(*tree);
    NodePtr back = parse_expression(text);
    REQUIRE_MESSAGE(structurally_equal(*tree, *back), text);
    REQUIRE(print(*back) == text);
  }
  CHECK(print(*parse_expression("((a^b))^c")) == "(a^b)^c");
  CHECK(print(*parse_expression("(1+i)/2")) == "(1+i)/2");
  CHECK(print(*parse_expression("a-(b-c)")) == "a-(b-c)");
}

TEST_CASE("problem files") {
  auto spec = parse_problem(
      "# degenerate parametric oscillator\n"
      "kind: hamiltonian\n"
      "param: l = 1\nparam: w = 1\nparam: m = 1\n"
      "a: (1 + (l/w)*cos(2*w*t))/(2*m)\n"
      "b: m*w^2*(1 - (l/w)*cos(2*w*t))/2\n"
      "c: (l/2)*sin(2*w*t)\n"
      "change_of_variable: tan\n");
  CHECK(spec.kind == ProblemKind::Hamiltonian);
  CHECK(spec.parameters.at("l") == 1);
  CHECK(spec.variable == "t");
  CHECK(spec.change_of_variable.value() == "tan");
  auto again = parse_problem(pretty_print(spec));
  CHECK(pretty_print(again) == pretty_print(spec));

  auto r0 = parse_problem("kind: reduced-ode\nr: 0\n");
  CHECK(r0.coefficients.at("r") == "0");
  CHECK(r0.variable == "tau");

  auto missing = [] { parse_problem("kind: hamiltonian\na: 1\nb: 1\n"); };
  CHECK_THROWS_AS(missing(), ProblemError);
  try {
    missing();
  } catch (const ProblemError& e) {
    CHECK(e.kind() == ProblemError::Kind::MissingRole);
  }
  try {
    parse_problem("kind: reduced-ode\nr: k/tau^2\n");
    FAIL("no error");
  } catch (const ProblemError& e) {
    CHECK(e.kind() == ProblemError::Kind::UnboundParameter);
  }
  try {
    parse_problem("kind: characteristic\nb1: 0\nb0: 1\nchange_of_variable: sec\n");
    FAIL("no error");
  } catch (const ProblemError& e) {
    CHECK(e.kind() == ProblemError::Kind::UnknownCatalogKey);
  }
  try {
    parse_problem("kind: reduced-ode\nr: 0\ncolour: red\n");
    FAIL("no error");
  } catch (const ProblemError& e) {
    CHECK(e.kind() == ProblemError::Kind::UnknownKey);
  }
  CHECK_THROWS_AS(parse_problem("kind: reduced-ode\nr: 2t\n"), SyntaxError);
}
