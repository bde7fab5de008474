#include "abslee/abs.hpp"
#include "abslee/driver.hpp"
#include "abslee/exact.hpp"
#include "abslee/rk.hpp"

#include <benchmark/benchmark.h>

#include <memory>

using namespace abslee;

namespace {

// Pulse on [-L, L]^2 with cell edge ~0.19; n is the subdivision count.
struct Setup {
  Discretization disc;
  DGField q0;

  Setup(int order, int n)
      : disc(make_rectangle_mesh(-n * 0.095, n * 0.095, -n * 0.095, n * 0.095, n, n), order, {0.5, 0.0}),
        q0(project_initial_condition([](const Vec2& x) { return gaussian_pulse_state(x, PulseParams{}); },
                                     disc.geometry(), disc.basis())) {}
};

std::unique_ptr<Setup> make(const benchmark::State& state) {
  return std::make_unique<Setup>(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
}

void BM_SpatialOperator(benchmark::State& state) {
  const auto s = make(state);
  DGField out(s->q0.order(), s->q0.n_cells());
  for (auto _ : state) {
    s->disc.op().apply(s->q0, out);
    benchmark::DoNotOptimize(out.coeffs().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(s->q0.n_cells()));
  state.counters["cells"] = static_cast<double>(s->q0.n_cells());
}
BENCHMARK(BM_SpatialOperator)->ArgsProduct({{0, 1, 2}, {64, 158}})->Unit(benchmark::kMillisecond);

void BM_AbsStep(benchmark::State& state) {
  const auto s = make(state);
  AbsOptions opt;
  opt.freeze_cells = state.range(2) != 0;
  int terms = 0;
  for (auto _ : state) {
    const AbsStepResult r = abs_step(s->q0, 0.1, s->disc.op(), opt);
    terms = r.report.iterations;
    benchmark::DoNotOptimize(r.solution.coeffs().data());
  }
  state.counters["terms"] = terms;
}
BENCHMARK(BM_AbsStep)->ArgsProduct({{0, 1, 2}, {64}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_Rk4Step(benchmark::State& state) {
  const auto s = make(state);
  for (auto _ : state) {
    const DGField r = rk_step(s->q0, 0.005, RkScheme::rk4, s->disc.op());
    benchmark::DoNotOptimize(r.coeffs().data());
  }
}
BENCHMARK(BM_Rk4Step)->ArgsProduct({{0, 1, 2}, {64}})->Unit(benchmark::kMillisecond);

void BM_ExactPressure(benchmark::State& state) {
  const PulseParams pp;
  double eta = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_pressure_radial(eta, 3.0, pp));
    eta = eta > 6.0 ? 0.0 : eta + 0.013;
  }
}
BENCHMARK(BM_ExactPressure);

}  // namespace

BENCHMARK_MAIN();
