#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "liouvprop/propagator/propagator.hpp"
#include "liouvprop/transforms/transforms.hpp"
#include "liouvprop/verify/verify.hpp"

namespace liouvprop::cli {

using liouville::Expr;

/// Serializable grid: tensor axes, optionally dropping points where
/// |field| < min_abs (evaluated in the time variable only).
struct GridSpec {
  std::vector<verify::SampleGrid::Axis> axes;
  std::string avoid;
  double min_abs = 0;

  static GridSpec line(const std::string& var, double lo, double hi, int count);
};

/// One recorded check. `inputs` name fields of the context; the kind decides
/// how they are used:
///   ode            inputs[0] in the context equation
///   reduced        inputs[0] in xi'' = r xi, r = field "r"
///   riccati-alpha  alpha' + b + 2 c_R alpha + 4 a alpha^2
///   riccati-beta   beta' + (c_R + 4 a alpha) beta, inputs {alpha, beta}
///   riccati-gamma  gamma' + a beta^2, inputs {beta, gamma}
///   beta-mu        beta * mu + 1, inputs {beta, mu}
///   pde            Schroedinger residual of inputs[0]
///   rk4            RK4 oracle against inputs (alpha0/beta0/gamma0 names)
///   wronskian      W(inputs[0], inputs[1]) in the context equation
///   asymptotic     small-t constants of alpha0, beta0, gamma0
struct CheckSpec {
  std::string name;
  std::string kind;
  std::vector<std::string> inputs;
  GridSpec grid;
  double tolerance = 1e-10;
  std::map<std::string, double> params;
  std::vector<double> points;
};

struct CheckContext {
  std::optional<propagator::QuadraticHamiltonian> hamiltonian;
  std::optional<transforms::GeneralODE2> equation;
  std::map<std::string, Expr> fields;

  const Expr& field(const std::string& name) const;
};

struct CheckResult {
  CheckSpec spec;
  double max_residual = 0;
  bool pass = false;
  std::size_t excluded = 0;
  std::string grid;
  std::string detail;
};

/// Runs one check; the same function backs report generation and
/// re-verification, so results are reproducible from a report.
CheckResult run_check(const CheckSpec& spec, const CheckContext& ctx);

verify::SampleGrid make_grid(const GridSpec& g, const CheckContext& ctx);

}  // namespace liouvprop::cli
