#include "liouvprop/verify/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "liouvprop/errors.hpp"

namespace liouvprop::verify {

using liouville::differentiate;
using liouville::eval_complex;

namespace {

std::complex<double> ev(const Expr& e, const Bindings& b) { return eval_complex(e, b); }

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

// ------------------------------------------------------------------ grids

std::vector<Bindings> SampleGrid::points() const {
  std::vector<Bindings> out;
  if (axes.empty()) return out;
  std::vector<int> idx(axes.size(), 0);
  while (true) {
    Bindings b;
    for (std::size_t k = 0; k < axes.size(); ++k) {
      const Axis& a = axes[k];
      double v = a.count <= 1 ? a.lo : a.lo + (a.hi - a.lo) * idx[k] / (a.count - 1);
      b[a.var] = v;
    }
    if (!keep || keep(b)) out.push_back(std::move(b));
    std::size_t k = axes.size();
    while (k > 0) {
      --k;
      if (++idx[k] < std::max(axes[k].count, 1)) break;
      idx[k] = 0;
      if (k == 0) return out;
    }
  }
}

std::size_t SampleGrid::excluded() const {
  std::size_t total = 1;
  for (const auto& a : axes) total *= static_cast<std::size_t>(std::max(a.count, 1));
  return total - points().size();
}

std::string SampleGrid::description() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < axes.size(); ++k) {
    if (k) os << " x ";
    os << axes[k].var << " in [" << format_double(axes[k].lo) << ", " << format_double(axes[k].hi) << "] ("
       << axes[k].count << ")";
  }
  if (!exclusion.empty()) os << ", excluding " << exclusion;
  return os.str();
}

SampleGrid SampleGrid::line(const std::string& var, double lo, double hi, int count) {
  SampleGrid g;
  g.axes.push_back({var, lo, hi, count});
  return g;
}

ResidualReport make_report(std::string name, std::vector<double> residuals, double tolerance, std::string grid,
                           std::size_t excluded) {
  ResidualReport r;
  r.name = std::move(name);
  r.tolerance = tolerance;
  r.grid = std::move(grid);
  r.excluded = excluded;
  std::vector<double> finite;
  for (double x : residuals) {
    if (std::isnan(x)) {
      ++r.excluded;
    } else {
      finite.push_back(x);
    }
  }
  r.residuals = std::move(finite);
  if (!r.residuals.empty()) {
    r.max = *std::max_element(r.residuals.begin(), r.residuals.end());
    r.mean = std::accumulate(r.residuals.begin(), r.residuals.end(), 0.0) / static_cast<double>(r.residuals.size());
  }
  r.pass = !r.residuals.empty() && r.max <= tolerance;
  return r;
}

// -------------------------------------------------------------- threading

unsigned thread_count() {
  if (const char* env = std::getenv("LIOUVPROP_THREADS")) {
    char* end = nullptr;
    long n = std::strtol(env, &end, 10);
    if (end != env && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<double> parallel_map(const std::vector<Bindings>& points, const std::function<double(const Bindings&)>& f) {
  std::vector<double> out(points.size(), 0.0);
  unsigned workers = std::min<unsigned>(thread_count(), static_cast<unsigned>(std::max<std::size_t>(points.size(), 1)));
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        out[i] = f(points[i]);
      } catch (const EvaluationSingularity&) {
        out[i] = std::nan("");
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  if (workers <= 1) {
    run(0, points.size());
  } else {
    std::vector<std::thread> threads;
    std::size_t chunk = (points.size() + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      std::size_t begin = w * chunk;
      std::size_t end = std::min(points.size(), begin + chunk);
      if (begin >= end) break;
      threads.emplace_back(run, begin, end);
    }
    for (auto& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

// ------------------------------------------------------------ ODE checks

ResidualReport ode_residual(const Expr& solution, const transforms::GeneralODE2& eq, const SampleGrid& grid,
                            double tolerance, const std::string& name) {
  Expr d1 = differentiate(solution, eq.var);
  Expr d2 = differentiate(d1, eq.var);
  auto points = grid.points();
  auto res = parallel_map(points, [&](const Bindings& b) {
    auto y = ev(solution, b);
    auto y1 = ev(d1, b);
    auto y2 = ev(d2, b);
    auto r = y2 + ev(eq.b1, b) * y1 + ev(eq.b0, b) * y;
    return std::abs(r) / (1.0 + std::abs(y) + std::abs(y1) + std::abs(y2));
  });
  return make_report(name, std::move(res), tolerance, grid.description(), grid.excluded());
}

ResidualReport ode_residual(const Expr& solution, const transforms::CharacteristicEq& eq, const SampleGrid& grid,
                            double tolerance, const std::string& name) {
  return ode_residual(solution, eq.as_general(), grid, tolerance, name);
}

// ----------------------------------------------------- finite differences

std::complex<double> d2_central4(const std::function<std::complex<double>(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2 * h)) / (12.0 * h * h);
}

std::complex<double> d1_central4(const std::function<std::complex<double>(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2 * h)) / (12.0 * h);
}

std::complex<double> d1_central2(const std::function<std::complex<double>(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

ResidualReport pde_residual(const Expr& green, const propagator::QuadraticHamiltonian& h, const SampleGrid& grid,
                            double hx, double ht, double tolerance, const std::string& name) {
  const std::string& tv = h.var;
  const std::complex<double> I(0, 1);
  auto points = grid.points();
  auto res = parallel_map(points, [&](const Bindings& p) {
    double x = p.at("x").real();
    double t = p.at(tv).real();
    auto G_x = [&](double xv) {
      Bindings b = p;
      b["x"] = xv;
      return ev(green, b);
    };
    auto G_t = [&](double tval) {
      Bindings b = p;
      b[tv] = tval;
      return ev(green, b);
    };
    Bindings bt{{tv, t}};
    auto a = ev(h.a, bt);
    auto bb = ev(h.b, bt);
    auto c = ev(h.c, bt);
    auto G = G_x(x);
    auto Gt = d1_central2(G_t, t, ht);
    auto Gx = d1_central4(G_x, x, hx);
    auto Gxx = d2_central4(G_x, x, hx);
    auto r = I * Gt - (-a * Gxx + bb * x * x * G - I * c * G - 2.0 * I * c * x * Gx);
    return std::abs(r) / std::abs(G);
  });
  return make_report(name, std::move(res), tolerance, grid.description(), grid.excluded());
}

// -------------------------------------------------------------------- RK4

RiccatiState RiccatiPath::at(double tv) const {
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (std::abs(t[k] - tv) <= 1e-12 * std::max(1.0, std::abs(tv))) return state[k];
  }
  throw std::out_of_range("t = " + format_double(tv) + " is not a node of the RK4 path");
}

RiccatiState asymptotic_seed(const propagator::QuadraticHamiltonian& h, double t) {
  auto k = propagator::asymptotic_constants(h);
  return {1.0 / (4 * k.a0 * t) + k.alpha, -1.0 / (2 * k.a0 * t) + k.beta, 1.0 / (4 * k.a0 * t) + k.gamma};
}

RiccatiPath rk4_riccati_system(const propagator::QuadraticHamiltonian& h, double t_start, double t_end, double step,
                               const RiccatiState& seed, const std::vector<double>& outputs) {
  if (!(t_start > 0) || !(t_end > t_start) || !(step > 0)) {
    throw std::invalid_argument("rk4_riccati_system needs 0 < t_start < t_end and step > 0");
  }
  const std::string& v = h.var;
  Expr cr = h.c_riccati();
  // d/ds = t d/dt with s = ln t
  auto rhs = [&](double s, const RiccatiState& y) {
    double t = std::exp(s);
    Bindings b{{v, t}};
    double a = ev(h.a, b).real();
    double bb = ev(h.b, b).real();
    double c = ev(cr, b).real();
    return RiccatiState{t * (-bb - 2 * c * y.alpha - 4 * a * y.alpha * y.alpha), -t * (c + 4 * a * y.alpha) * y.beta,
                        -t * a * y.beta * y.beta};
  };
  auto axpy = [](const RiccatiState& y, double k, const RiccatiState& d) {
    return RiccatiState{y.alpha + k * d.alpha, y.beta + k * d.beta, y.gamma + k * d.gamma};
  };

  std::vector<double> stops;
  for (double o : outputs) {
    if (o > t_start && o < t_end) stops.push_back(o);
  }
  stops.push_back(t_end);
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

  RiccatiPath path;
  path.t.push_back(t_start);
  path.state.push_back(seed);
  double s = std::log(t_start);
  RiccatiState y = seed;
  for (double stop : stops) {
    double s_end = std::log(stop);
    auto n = static_cast<long>(std::ceil((s_end - s) / step - 1e-9));
    n = std::max(n, 1L);
    double hs = (s_end - s) / static_cast<double>(n);
    for (long i = 0; i < n; ++i) {
      auto k1 = rhs(s, y);
      auto k2 = rhs(s + hs / 2, axpy(y, hs / 2, k1));
      auto k3 = rhs(s + hs / 2, axpy(y, hs / 2, k2));
      auto k4 = rhs(s + hs, axpy(y, hs, k3));
      y.alpha += hs / 6 * (k1.alpha + 2 * k2.alpha + 2 * k3.alpha + k4.alpha);
      y.beta += hs / 6 * (k1.beta + 2 * k2.beta + 2 * k3.beta + k4.beta);
      y.gamma += hs / 6 * (k1.gamma + 2 * k2.gamma + 2 * k3.gamma + k4.gamma);
      s = i + 1 == n ? s_end : s + hs;
      if (!std::isfinite(y.alpha) || !std::isfinite(y.beta) || !std::isfinite(y.gamma)) {
        throw StepSizeUnderflow("RK4 state diverged at " + v + " = " + format_double(std::exp(s)));
      }
    }
    path.t.push_back(stop);
    path.state.push_back(y);
  }
  return path;
}

// -------------------------------------------------------------- Wronskian

std::complex<double> wronskian_at(const Expr& f, const Expr& g, const std::string& var, double t) {
  Bindings b{{var, t}};
  return ev(f, b) * ev(differentiate(g, var), b) - ev(g, b) * ev(differentiate(f, var), b);
}

WronskianReport wronskian_check(const Expr& f, const Expr& g, const transforms::GeneralODE2& eq, const SampleGrid& grid,
                                double tolerance, const std::string& name) {
  const std::string& v = eq.var;
  Expr W = f * differentiate(g, v) - g * differentiate(f, v);
  auto points = grid.points();
  WronskianReport out;
  if (points.empty()) {
    out.report = make_report(name, {}, tolerance, grid.description(), grid.excluded());
    return out;
  }
  double t0 = points.front().at(v).real();
  out.w0 = ev(W, points.front());
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  auto res = parallel_map(points, [&](const Bindings& b) {
    double t = b.at(v).real();
    std::complex<double> integral = 0;
    if (t != t0 && !eq.b1.is_zero()) {
      double re = GK::integrate([&](double s) { return ev(eq.b1, {{v, s}}).real(); }, t0, t, 10, 1e-13);
      double im = GK::integrate([&](double s) { return ev(eq.b1, {{v, s}}).imag(); }, t0, t, 10, 1e-13);
      integral = {re, im};
    }
    auto predicted = out.w0 * std::exp(-integral);
    return std::abs(ev(W, b) - predicted) / (1.0 + std::abs(predicted));
  });
  out.report = make_report(name, std::move(res), tolerance, grid.description(), grid.excluded());
  return out;
}

}  // namespace liouvprop::verify
