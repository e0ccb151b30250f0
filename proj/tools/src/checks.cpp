#include "liouvprop/cli/checks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "liouvprop/errors.hpp"
#include "liouvprop/liouville/calculus.hpp"

namespace liouvprop::cli {

using namespace liouville;
using verify::Bindings;

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

const propagator::QuadraticHamiltonian& need_hamiltonian(const CheckContext& ctx, const CheckSpec& spec) {
  if (!ctx.hamiltonian) throw SchemaMismatch("check '" + spec.name + "' needs a hamiltonian");
  return *ctx.hamiltonian;
}

void need_inputs(const CheckSpec& spec, std::size_t n) {
  if (spec.inputs.size() < n) throw SchemaMismatch("check '" + spec.name + "' lists too few inputs");
}

// |sum terms| / (1 + sum |terms|) at each grid point.
CheckResult pointwise(const CheckSpec& spec, const CheckContext& ctx, const std::vector<Expr>& terms) {
  auto grid = make_grid(spec.grid, ctx);
  auto res = verify::parallel_map(grid.points(), [&](const Bindings& b) {
    std::complex<double> sum = 0;
    double scale = 1;
    for (const auto& e : terms) {
      auto v = eval_complex(e, b);
      sum += v;
      scale += std::abs(v);
    }
    return std::abs(sum) / scale;
  });
  auto rep = verify::make_report(spec.name, std::move(res), spec.tolerance, grid.description(), grid.excluded());
  CheckResult out;
  out.max_residual = rep.max;
  out.pass = rep.pass;
  out.excluded = rep.excluded;
  out.grid = rep.grid;
  return out;
}

int component(const std::string& field) {
  if (field.find("alpha") != std::string::npos) return 0;
  if (field.find("beta") != std::string::npos) return 1;
  if (field.find("gamma") != std::string::npos) return 2;
  throw SchemaMismatch("rk4 input '" + field + "' is not an alpha, beta or gamma field");
}

double param(const CheckSpec& spec, const std::string& key) {
  auto it = spec.params.find(key);
  if (it == spec.params.end()) throw SchemaMismatch("check '" + spec.name + "' lacks parameter " + key);
  return it->second;
}

}  // namespace

GridSpec GridSpec::line(const std::string& var, double lo, double hi, int count) {
  GridSpec g;
  g.axes.push_back({var, lo, hi, count});
  return g;
}

const Expr& CheckContext::field(const std::string& name) const {
  auto it = fields.find(name);
  if (it == fields.end()) throw SchemaMismatch("report has no field '" + name + "'");
  return it->second;
}

verify::SampleGrid make_grid(const GridSpec& g, const CheckContext& ctx) {
  verify::SampleGrid grid;
  grid.axes = g.axes;
  if (!g.avoid.empty()) {
    Expr f = ctx.field(g.avoid);
    std::string tv = ctx.hamiltonian ? ctx.hamiltonian->var : "t";
    double min_abs = g.min_abs;
    grid.keep = [f, tv, min_abs](const Bindings& b) {
      auto it = b.find(tv);
      if (it == b.end()) return true;
      try {
        return std::abs(eval_complex(f, {{tv, it->second}})) >= min_abs;
      } catch (const EvaluationSingularity&) {
        return false;
      }
    };
    grid.exclusion = "|" + g.avoid + "| < " + fmt(min_abs);
  }
  return grid;
}

CheckResult run_check(const CheckSpec& spec, const CheckContext& ctx) {
  CheckResult out;
  const std::string& k = spec.kind;

  if (k == "ode" || k == "reduced") {
    need_inputs(spec, 1);
    Expr y = ctx.field(spec.inputs[0]);
    transforms::GeneralODE2 eq;
    if (k == "ode") {
      if (!ctx.equation) throw SchemaMismatch("check '" + spec.name + "' needs an equation");
      eq = *ctx.equation;
    } else {
      eq = {Expr(), -ctx.field("r"), spec.grid.axes.at(0).var};
      Expr res = simplify(expand(differentiate(differentiate(y, eq.var), eq.var) + eq.b0 * y));
      if (res.is_zero()) {
        out.detail = "symbolic residual 0";
        out.pass = true;
        out.grid = "symbolic";
        out.spec = spec;
        return out;
      }
    }
    auto grid = make_grid(spec.grid, ctx);
    auto rep = verify::ode_residual(y, eq, grid, spec.tolerance, spec.name);
    out.max_residual = rep.max;
    out.pass = rep.pass;
    out.excluded = rep.excluded;
    out.grid = rep.grid;
  } else if (k == "riccati-alpha" || k == "riccati-beta" || k == "riccati-gamma") {
    const auto& h = need_hamiltonian(ctx, spec);
    const std::string& v = h.var;
    Expr cr = h.c_riccati();
    std::vector<Expr> terms;
    if (k == "riccati-alpha") {
      need_inputs(spec, 1);
      Expr a = ctx.field(spec.inputs[0]);
      terms = {differentiate(a, v), h.b, Expr(2L) * cr * a, Expr(4L) * h.a * a * a};
    } else if (k == "riccati-beta") {
      need_inputs(spec, 2);
      Expr a = ctx.field(spec.inputs[0]);
      Expr b = ctx.field(spec.inputs[1]);
      terms = {differentiate(b, v), cr * b, Expr(4L) * h.a * a * b};
    } else {
      need_inputs(spec, 2);
      Expr b = ctx.field(spec.inputs[0]);
      Expr g = ctx.field(spec.inputs[1]);
      terms = {differentiate(g, v), h.a * b * b};
    }
    out = pointwise(spec, ctx, terms);
  } else if (k == "beta-mu") {
    need_inputs(spec, 2);
    Expr prod = ctx.field(spec.inputs[0]) * ctx.field(spec.inputs[1]);
    if (simplify(expand(prod + Expr(1L))).is_zero()) {
      out.pass = true;
      out.grid = "symbolic";
      out.detail = "symbolic identity";
    } else {
      out = pointwise(spec, ctx, {prod, Expr(1L)});
      out.detail = "not a symbolic identity";
    }
  } else if (k == "pde") {
    need_inputs(spec, 1);
    const auto& h = need_hamiltonian(ctx, spec);
    auto grid = make_grid(spec.grid, ctx);
    auto rep = verify::pde_residual(ctx.field(spec.inputs[0]), h, grid, param(spec, "hx"), param(spec, "ht"),
                                    spec.tolerance, spec.name);
    out.max_residual = rep.max;
    out.pass = rep.pass;
    out.excluded = rep.excluded;
    out.grid = rep.grid;
  } else if (k == "rk4") {
    need_inputs(spec, 1);
    const auto& h = need_hamiltonian(ctx, spec);
    double t0 = param(spec, "t_start");
    double step = param(spec, "step");
    if (spec.points.empty()) throw SchemaMismatch("rk4 check '" + spec.name + "' has no points");
    double t_end = *std::max_element(spec.points.begin(), spec.points.end());
    auto path = verify::rk4_riccati_system(h, t0, t_end, step, verify::asymptotic_seed(h, t0), spec.points);
    std::ostringstream detail;
    double worst = 0;
    for (double t : spec.points) {
      auto s = path.at(t);
      double vals[] = {s.alpha, s.beta, s.gamma};
      for (const auto& f : spec.inputs) {
        double closed = eval_complex(ctx.field(f), {{h.var, t}}).real();
        double oracle = vals[component(f)];
        double rel = std::abs(oracle - closed) / std::max(std::abs(closed), 1e-300);
        worst = std::max(worst, rel);
        detail << f << "(" << t << "): closed " << closed << ", rk4 " << oracle << "; ";
      }
    }
    out.max_residual = worst;
    out.pass = worst <= spec.tolerance;
    out.grid = "t_start " + fmt(t0) + ", log-time step " + fmt(step);
    out.detail = detail.str();
  } else if (k == "wronskian") {
    need_inputs(spec, 2);
    if (!ctx.equation) throw SchemaMismatch("check '" + spec.name + "' needs an equation");
    auto grid = make_grid(spec.grid, ctx);
    auto w = verify::wronskian_check(ctx.field(spec.inputs[0]), ctx.field(spec.inputs[1]), *ctx.equation, grid,
                                     spec.tolerance, spec.name);
    out.max_residual = w.report.max;
    out.pass = w.report.pass;
    out.excluded = w.report.excluded;
    out.grid = w.report.grid;
    std::ostringstream d;
    d << "W(t0) = " << w.w0.real();
    if (w.w0.imag() != 0) d << (w.w0.imag() > 0 ? "+" : "") << w.w0.imag() << "i";
    out.detail = d.str();
  } else if (k == "asymptotic") {
    need_inputs(spec, 3);
    const auto& h = need_hamiltonian(ctx, spec);
    propagator::RiccatiTriple tr{ctx.field(spec.inputs[0]), ctx.field(spec.inputs[1]), ctx.field(spec.inputs[2])};
    auto rep = propagator::asymptotic_check(tr, h);
    std::ostringstream d;
    double worst = 0;
    for (const auto& s : rep.series) {
      worst = std::max(worst, s.deviation.back());
      d << s.name << ": limit " << s.observed.back() << " expected " << s.expected << " order " << s.observed_order
        << "; ";
    }
    out.max_residual = worst;
    out.pass = worst <= spec.tolerance;
    out.grid = "t in {1e-2, 1e-3, 1e-4}";
    out.detail = d.str();
  } else {
    throw SchemaMismatch("unknown check kind '" + k + "'");
  }
  out.spec = spec;
  return out;
}

}  // namespace liouvprop::cli
