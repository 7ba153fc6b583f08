#include <benchmark/benchmark.h>

#include "pnes/pnes.hpp"

namespace {

using namespace pnes;

PureState coherent_twb(double alpha, double x, std::size_t pair_dim) {
  return product_state(coherent(alpha, pump_dimension(alpha)).amplitudes, twb(TwbParam{x}, pair_dim));
}

// Box sizes from 10x10x10 up to the largest desk-scale config, 50x25x25.
void BM_GeneratorApply(benchmark::State& st) {
  const auto d = static_cast<std::size_t>(st.range(0));
  const TruncationConfig cfg(2 * d, d, d);
  PureState s = PureState::zero(cfg);
  for (std::size_t i = 0; i < cfg.size(); ++i) s.amplitudes[i] = 1.0 / std::sqrt(double(cfg.size()));
  Amplitudes out(cfg.size());
  for (auto _ : st) {
    benchmark::DoNotOptimize(apply_interaction_generator(s.amplitudes, out, cfg, 0.1));
    benchmark::ClobberMemory();
  }
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(cfg.size()));
}
BENCHMARK(BM_GeneratorApply)->Arg(10)->Arg(18)->Arg(25);

void BM_Rk4Steps(benchmark::State& st) {
  const PureState s = coherent_twb(3.0, 0.3, static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(propagate(s, HamiltonianParams{0.1}, 0.1, 10));
  st.SetItemsProcessed(st.iterations() * 10);
}
BENCHMARK(BM_Rk4Steps)->Arg(12)->Arg(25);

void BM_Taylor4Steps(benchmark::State& st) {
  const PureState s = coherent_twb(3.0, 0.3, static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(propagate(s, HamiltonianParams{0.1}, 0.1, 10, Integrator::kTaylor4));
  st.SetItemsProcessed(st.iterations() * 10);
}
BENCHMARK(BM_Taylor4Steps)->Arg(12)->Arg(25);

void BM_Measure(benchmark::State& st) {
  const PureState s = coherent_twb(3.0, 0.5, 25);
  for (auto _ : st) benchmark::DoNotOptimize(measure(s));
}
BENCHMARK(BM_Measure);

void BM_BuildReport(benchmark::State& st) {
  const auto family = st.range(0) == 0 ? StateFamily::kTwb : StateFamily::kTmc;
  for (auto _ : st) benchmark::DoNotOptimize(build_report(family, 0.6, 0.1, 2.0));
}
BENCHMARK(BM_BuildReport)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_IntegrateModelGaussian(benchmark::State& st) {
  const auto p = PumpProfile::gaussian(4.0, 4.0, 0.3);
  std::vector<double> grid;
  for (int k = 0; k <= 800; ++k) grid.push_back(0.01 * k);
  for (auto _ : st) benchmark::DoNotOptimize(integrate_model(p, 0.2, grid));
}
BENCHMARK(BM_IntegrateModelGaussian)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
