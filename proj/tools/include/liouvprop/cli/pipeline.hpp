#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "liouvprop/cli/report.hpp"
#include "liouvprop/kovacic/kovacic.hpp"
#include "liouvprop/parser/problem.hpp"
#include "liouvprop/transforms/catalog.hpp"

namespace liouvprop::cli {

/// A formula as printed in the source, compared against a computed field.
/// `field` may list alternatives separated by '|'; the first structurally
/// equal one is used. Oracles:
///   structural                  equality only
///   ode                         residual in the problem's time equation
///   tau-ode                     residual in the algebrized equation (b1, b0)
///   riccati-alpha/beta/gamma    Riccati residual with the computed partners
struct Claim {
  std::string name;
  std::string field;
  Expr printed;
  std::string oracle = "structural";
  std::string note;
  /// A second equation to test the printed expression in, reported in the
  /// note (e.g. the equation a misprinted basis actually solves).
  std::optional<transforms::GeneralODE2> alternative;
  std::string alternative_label;
  /// "solve" claims are evaluated by both commands, "propagator" claims only
  /// once the Riccati triple exists.
  std::string stage = "solve";
};

struct Problem {
  std::string target;
  std::map<std::string, std::string> parameters;
  /// Command a built-in target runs by default: "solve" or "propagator".
  std::string command = "solve";

  /// Characteristic route: the time-domain equation comes from the
  /// Hamiltonian (or is given directly), Kovacic runs on its reduced form.
  std::optional<propagator::QuadraticHamiltonian> hamiltonian;
  std::optional<transforms::GeneralODE2> equation;
  std::optional<transforms::ChangeOfVariable> cov;
  /// Basis used when Kovacic is out of scope; checked by the residual oracle.
  std::optional<std::pair<Expr, Expr>> basis;
  std::string basis_source;
  algebra::AlgebraicScalar mu1_at_zero = algebra::AlgebraicScalar(1L);
  bool force_case2 = false;

  /// Riccati route: a known solution of the Riccati equation.
  std::optional<transforms::RiccatiGeneral> riccati;
  std::optional<Expr> riccati_solution;
  Expr mu_scale = Expr(1L);

  /// Sampling window in the time variable.
  double t_lo = 0.2;
  double t_hi = 1.2;
  /// Time step of the 2nd-order stencil in the PDE check.
  double pde_ht = 1e-5;
  std::vector<Claim> claims;
  std::vector<std::string> notes;
};

/// Kovacic verdicts that the CLI maps to exit code 3.
bool unsupported(const Report& r);

/// algebrize -> reduce -> kovacic -> back_substitute, with residual checks.
Report run_solve(const Problem& p);

/// Full chain to the Green function, with all verification checks and the
/// closed-form gamma0 versus RK4 verdict.
Report run_propagator(const Problem& p);

/// Problem from a validated spec file. Throws ProblemError for kinds the
/// requested command does not accept.
Problem problem_from_spec(const parser::ProblemSpec& spec, const std::string& name);

}  // namespace liouvprop::cli
