#include "doctest.h"
#include "liouvprop/cli/commands.hpp"
#include "liouvprop/cli/pipeline.hpp"
#include "liouvprop/cli/targets.hpp"
#include "liouvprop/errors.hpp"
#include "liouvprop/liouville/calculus.hpp"

using namespace liouvprop;
using namespace liouvprop::cli;
using liouville::parse;

namespace {

Report reparse(const Report& r) { return report_from_json(nlohmann::json::parse(to_json(r).dump())); }

}  // namespace

TEST_CASE("reports are deterministic") {
  auto a = to_json(run_propagator(ince(1, 1))).dump(2);
  auto b = to_json(run_propagator(ince(1, 1))).dump(2);
  CHECK(a == b);
  auto t1 = to_json(run_propagator(toy(3, {}))).dump();
  auto t2 = to_json(run_propagator(toy(3, {}))).dump();
  CHECK(t1 == t2);
}

TEST_CASE("verify re-runs recorded checks with the same verdicts") {
  std::vector<Report> reports = {run_solve(ince(1, 1)), run_propagator(ince(1, 1)), run_propagator(toy(3, {})),
                                 run_propagator(toy(5, {})), run_propagator(tn(0)), run_solve(tn(-4))};
  for (const auto& r : reports) {
    CAPTURE(r.target);
    auto v = verify_report(nlohmann::json::parse(to_json(r).dump()));
    CHECK(v.changed.empty());
    CHECK(v.exit_code == kPass);
    REQUIRE(v.report.checks.size() == r.checks.size());
    for (std::size_t k = 0; k < r.checks.size(); ++k) {
      CHECK(v.report.checks[k].max_residual == doctest::Approx(r.checks[k].max_residual).epsilon(1e-6));
    }
  }
}

TEST_CASE("report round trip keeps fields") {
  Report r = run_propagator(toy(3, {}));
  Report back = reparse(r);
  REQUIRE(back.fields.size() == r.fields.size());
  for (const auto& [name, e] : r.fields) {
    CAPTURE(name);
    CHECK(liouville::to_string(back.fields.at(name)) == liouville::to_string(e));
  }
  CHECK(back.hamiltonian.has_value());
  CHECK(back.window.variable == "t");
}

TEST_CASE("tampered mu0 fails verification") {
  auto j = nlohmann::json::parse(to_json(run_propagator(ince(1, 1))).dump());
  j["mu0"] = "sin(t)*cosh(t)";
  auto v = verify_report(j);
  CHECK(v.exit_code == kCheckFailure);
  CHECK(std::find(v.changed.begin(), v.changed.end(), "mu0_characteristic") != v.changed.end());
}

TEST_CASE("empty checks pass with a warning") {
  auto j = nlohmann::json::parse(to_json(run_solve(ince(1, 1))).dump());
  j["checks"] = nlohmann::json::array();
  auto v = verify_report(j);
  CHECK(v.exit_code == kPass);
  CHECK(v.warnings.size() == 1);
}

TEST_CASE("schema mismatches are reported") {
  auto j = nlohmann::json::parse(to_json(run_solve(ince(1, 1))).dump());
  auto missing = j;
  missing.erase("checks");
  CHECK_THROWS_AS(verify_report(missing), SchemaMismatch);
  auto bad_kind = j;
  bad_kind["checks"][0]["kind"] = "telepathy";
  CHECK_THROWS_AS(verify_report(bad_kind), SchemaMismatch);
  auto bad_expr = j;
  bad_expr["fields"]["r"] = "1/(";
  CHECK_THROWS_AS(verify_report(bad_expr), SchemaMismatch);
}

TEST_CASE("exit codes") {
  CHECK(exit_code(run_solve(ince(1, 1))) == kPass);
  CHECK(exit_code(run_solve(tn(-4))) == kUnsupported);
  CHECK(exit_code(UnsupportedStructure("x")) == kUnsupported);
  CHECK(exit_code(NonRationalResult("x")) == kUnsupported);
  CHECK(exit_code(SchemaMismatch("x")) == kInputError);
  CHECK(exit_code(ProblemError(ProblemError::Kind::UnknownKey, "x")) == kInputError);
  Problem no_basis = tn(-4);
  no_basis.basis.reset();
  CHECK_THROWS_AS(run_propagator(no_basis), UnsupportedStructure);
}

TEST_CASE("overrides re-run checks") {
  Report r = run_solve(ince(1, 1));
  apply_overrides(r, {{{"solution1", 1e-30}}, std::nullopt});
  CHECK_FALSE(r.check("solution1")->pass);
  CHECK(r.check("solution2")->pass);
  apply_overrides(r, {{{"*", 1e-10}}, 20});
  CHECK(r.check("solution1")->pass);
  CHECK(r.check("solution1")->grid.find("(20)") != std::string::npos);
}

TEST_CASE("trivial reduced equation") {
  Problem p;
  p.target = "r = 0";
  p.equation = transforms::GeneralODE2{Expr(0L), Expr(0L), "tau"};
  Report r = run_solve(p);
  REQUIRE(r.fields.count("solution1"));
  REQUIRE(r.fields.count("solution2"));
  std::set<std::string> got = {liouville::to_string(r.fields.at("solution1")),
                               liouville::to_string(r.fields.at("solution2"))};
  CHECK(got == std::set<std::string>{"1", "tau"});
  CHECK(r.all_pass());
}

TEST_CASE("problem files") {
  auto spec = parser::parse_problem(
      "kind: hamiltonian\n"
      "param: l = 1\nparam: w = 1\n"
      "a: (1 + (l/w)*cos(2*w*t))/2\n"
      "b: w^2*(1 - (l/w)*cos(2*w*t))/2\n"
      "c: (l/2)*sin(2*w*t)\n"
      "change_of_variable: tan\n");
  Problem p = problem_from_spec(spec, "file");
  Report r = run_propagator(p);
  CHECK(r.all_pass());
  CHECK(liouville::structurally_equal(r.fields.at("mu0"), parse("sinh(t)*cos(t)+cosh(t)*sin(t)"), "t"));

  auto ric = parser::parse_problem(
      "kind: riccati-general\n"
      "a0: 0\na1: 0\na2: -cos(t)\n"
      "solution: 1/sin(t)\n");
  Report rr = run_propagator(problem_from_spec(ric, "ric"));
  CHECK(rr.all_pass());
  CHECK(liouville::structurally_equal(rr.fields.at("alpha0"), parse("1/sin(t)"), "t"));

  auto no_solution = parser::parse_problem("kind: riccati-general\na0: 0\na1: 0\na2: -cos(t)\n");
  CHECK_THROWS_AS(run_propagator(problem_from_spec(no_solution, "x")), ProblemError);
}

TEST_CASE("printed-formula verdicts") {
  Report g = run_propagator(ince(1, 1));
  CHECK(g.annotation("beta0 from the printed propagator")->verdict == "agrees");
  CHECK(g.annotation("gamma0 from the printed propagator")->verdict == "formula-discrepant");
  Report t3 = run_propagator(toy(3, {}));
  CHECK(t3.annotation("gamma")->verdict == "formula-discrepant");
  CHECK(t3.annotation("beta")->verdict == "agrees");
  Report k = run_solve(ince(5, 3));
  CHECK(k.annotation("algebrized b1")->verdict == "formula-discrepant");
  CHECK(k.annotation("algebrized b0")->verdict == "agrees");
}
