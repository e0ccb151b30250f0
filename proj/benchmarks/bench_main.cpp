#include <benchmark/benchmark.h>

#include "liouvprop/kovacic/kovacic.hpp"
#include "liouvprop/liouville/calculus.hpp"
#include "liouvprop/parser/parser.hpp"
#include "liouvprop/propagator/propagator.hpp"
#include "liouvprop/transforms/catalog.hpp"
#include "liouvprop/verify/verify.hpp"

using namespace liouvprop;
using liouville::Expr;
using liouville::parse;

namespace {

propagator::QuadraticHamiltonian ince(long l, long w) {
  std::map<std::string, algebra::BigRational> p{{"l", l}, {"w", w}};
  return {parse("(1+(l/w)*cos(2*w*t))/2", p), parse("w^2*(1-(l/w)*cos(2*w*t))/2", p),
          parse("(l/2)*sin(2*w*t)", p), std::nullopt, "t"};
}

const char* const kMu0 = "sinh(t)*cos(t)+cosh(t)*sin(t)";
const char* const kMu1 = "sinh(t)*sin(t)+cosh(t)*cos(t)";

}  // namespace

static void BM_ParseExpression(benchmark::State& state) {
  const std::string text = "((k^4-4*k^3+7*k^2-4*k)*tau^4+(10*k^2-2*k^4)*tau^2+4*k+7*k^2)/((1+tau^2)^2*((k-1)*tau^2-1-k)^2)";
  for (auto _ : state) benchmark::DoNotOptimize(parser::parse_expression(text));
}
BENCHMARK(BM_ParseExpression);

static void BM_Algebrize(benchmark::State& state) {
  auto h = ince(state.range(0), state.range(1));
  auto cov = transforms::Catalog::builtin().instantiate("tan", state.range(1));
  auto eq = h.characteristic().as_general();
  for (auto _ : state) benchmark::DoNotOptimize(transforms::algebrize(eq, cov));
}
BENCHMARK(BM_Algebrize)->Args({1, 1})->Args({5, 3});

static void BM_Kovacic(benchmark::State& state) {
  auto h = ince(state.range(0), state.range(1));
  auto cov = transforms::Catalog::builtin().instantiate("tan", state.range(1));
  auto red = transforms::reduce_general(transforms::algebrize(h.characteristic().as_general(), cov)).reduced();
  for (auto _ : state) benchmark::DoNotOptimize(kovacic::solve(red, {true}));
}
BENCHMARK(BM_Kovacic)->Args({1, 1})->Args({5, 3})->Args({5, 4})->Unit(benchmark::kMillisecond);

static void BM_BuildGreen(benchmark::State& state) {
  auto h = ince(1, 1);
  Expr mu0 = parse(kMu0);
  for (auto _ : state) {
    auto tr = propagator::build_triple({mu0, parse(kMu1), {}}, h);
    benchmark::DoNotOptimize(propagator::build_green(tr, mu0));
  }
}
BENCHMARK(BM_BuildGreen)->Unit(benchmark::kMillisecond);

static void BM_PdeResidual(benchmark::State& state) {
  auto h = ince(1, 1);
  Expr mu0 = parse(kMu0);
  auto green = propagator::build_green(propagator::build_triple({mu0, parse(kMu1), {}}, h), mu0).closed_form;
  verify::SampleGrid grid;
  grid.axes = {{"x", -1, 1, 5}, {"y", -1, 1, 5}, {"t", 0.2, 1.2, 5}};
  for (auto _ : state) benchmark::DoNotOptimize(verify::pde_residual(green, h, grid, 1e-3, 1e-4, 1e-4, "pde"));
}
BENCHMARK(BM_PdeResidual)->Unit(benchmark::kMillisecond);

static void BM_Rk4RiccatiSystem(benchmark::State& state) {
  auto h = ince(1, 1);
  double step = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        verify::rk4_riccati_system(h, 1e-7, 1.0, step, verify::asymptotic_seed(h, 1e-7), {0.3, 0.5, 1.0}));
  }
}
BENCHMARK(BM_Rk4RiccatiSystem)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
