#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "liouvprop/liouville/expr.hpp"
#include "liouvprop/propagator/propagator.hpp"
#include "liouvprop/transforms/transforms.hpp"

namespace liouvprop::verify {

using liouville::Bindings;
using liouville::Expr;

/// Tensor grid over closed intervals; points failing `keep` are dropped.
struct SampleGrid {
  struct Axis {
    std::string var;
    double lo = 0;
    double hi = 1;
    int count = 1;
  };
  std::vector<Axis> axes;
  std::function<bool(const Bindings&)> keep;
  std::string exclusion;  // human-readable description of `keep`

  /// Points in row-major order of `axes`, after exclusion.
  std::vector<Bindings> points() const;
  std::size_t excluded() const;
  std::string description() const;

  static SampleGrid line(const std::string& var, double lo, double hi, int count);
};

struct ResidualReport {
  std::string name;
  std::vector<double> residuals;
  double max = 0;
  double mean = 0;
  double tolerance = 0;
  bool pass = false;
  std::string grid;
  /// Grid points dropped by the exclusion predicate or singular evaluation.
  std::size_t excluded = 0;
};

ResidualReport make_report(std::string name, std::vector<double> residuals, double tolerance, std::string grid,
                           std::size_t excluded = 0);

/// Worker count for grid sweeps: LIOUVPROP_THREADS when set, otherwise the
/// hardware concurrency.
unsigned thread_count();

/// f evaluated at every point, in point order, using thread_count() workers.
/// Points where f throws EvaluationSingularity yield NaN.
std::vector<double> parallel_map(const std::vector<Bindings>& points, const std::function<double(const Bindings&)>& f);

/// |y'' + b1 y' + b0 y| / (1 + |y| + |y'| + |y''|) with exact derivatives.
ResidualReport ode_residual(const Expr& solution, const transforms::GeneralODE2& eq, const SampleGrid& grid,
                            double tolerance = 1e-10, const std::string& name = "ode_residual");
ResidualReport ode_residual(const Expr& solution, const transforms::CharacteristicEq& eq, const SampleGrid& grid,
                            double tolerance = 1e-10, const std::string& name = "ode_residual");

/// Central differences: fourth order in x, second order in t.
std::complex<double> d2_central4(const std::function<std::complex<double>(double)>& f, double x, double h);
std::complex<double> d1_central4(const std::function<std::complex<double>(double)>& f, double x, double h);
std::complex<double> d1_central2(const std::function<std::complex<double>(double)>& f, double x, double h);

/// Residual of i G_t = -a G_xx + b x^2 G - i c G - 2 i c x G_x relative to |G|,
/// on a grid over x, y, t.
ResidualReport pde_residual(const Expr& green, const propagator::QuadraticHamiltonian& h, const SampleGrid& grid,
                            double hx = 1e-3, double ht = 1e-4, double tolerance = 1e-4,
                            const std::string& name = "pde_residual");

struct RiccatiState {
  double alpha = 0;
  double beta = 0;
  double gamma = 0;
};

struct RiccatiPath {
  std::vector<double> t;
  std::vector<RiccatiState> state;
  /// State at a node; throws std::out_of_range when t is not a node.
  RiccatiState at(double t) const;
};

/// Classical RK4 for the Riccati system in s = ln t, nodes placed so that
/// every t in `outputs` is hit exactly. Throws StepSizeUnderflow when the
/// state stops being finite.
RiccatiPath rk4_riccati_system(const propagator::QuadraticHamiltonian& h, double t_start, double t_end, double step,
                               const RiccatiState& seed, const std::vector<double>& outputs = {});

/// Seed from the small-t expansions of alpha0, beta0, gamma0.
RiccatiState asymptotic_seed(const propagator::QuadraticHamiltonian& h, double t);

struct WronskianReport {
  ResidualReport report;
  /// W at the first grid point (signed).
  std::complex<double> w0;
};

/// For mu'' + b1 mu' + b0 mu = 0 checks W(t) = W(t0) exp(-integral_{t0}^t b1)
/// (constancy when b1 = 0); quadrature by Gauss-Kronrod.
WronskianReport wronskian_check(const Expr& f, const Expr& g, const transforms::GeneralODE2& eq, const SampleGrid& grid,
                                double tolerance = 1e-8, const std::string& name = "wronskian");

/// W = f g' - g f' at a point.
std::complex<double> wronskian_at(const Expr& f, const Expr& g, const std::string& var, double t);

}  // namespace liouvprop::verify
