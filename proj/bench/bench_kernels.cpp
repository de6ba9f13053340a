// Parallel kernels against their serial reference versions.

#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "windest/harness.hpp"
#include "windest/kernels.hpp"
#include "windest/paper_cases.hpp"
#include "windest/stability.hpp"

using namespace windest;

namespace {

template <bool Parallel>
void BM_FrequencyResponse(benchmark::State& state) {
  const auto w = log_grid(1e-3, 1e3, static_cast<std::size_t>(state.range(0)));
  std::vector<std::complex<double>> g(w.size());
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::loop_frequency_response(40.0, 10.0, 0.3, w, g);
    } else {
      kernels::reference::loop_frequency_response(40.0, 10.0, 0.3, w, g);
    }
    benchmark::DoNotOptimize(g.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_NearestPoint(benchmark::State& state) {
  const auto w = log_grid(1e-3, 1e3, static_cast<std::size_t>(state.range(0)));
  std::vector<std::complex<double>> g(w.size());
  kernels::reference::loop_frequency_response(40.0, 10.0, 0.3, w, g);
  const std::complex<double> center(case_study_circle().center, 0.0);
  for (auto _ : state) {
    auto r = Parallel ? kernels::nearest_to(g, center) : kernels::reference::nearest_to(g, center);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_SectorExtrema(benchmark::State& state) {
  const auto p = case_study_params();
  const auto c = synthetic_cp_curve();
  const auto env = default_envelope(p, c);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto r = Parallel ? kernels::sector_ratio_extrema(p, c, env.omega_r.lo, env.omega_r.hi, env.u.lo, env.u.hi, n)
                      : kernels::reference::sector_ratio_extrema(p, c, env.omega_r.lo, env.omega_r.hi, env.u.lo,
                                                                 env.u.hi, n);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

template <bool Parallel>
void BM_CaseBatch(benchmark::State& state) {
  const auto setup = default_case_setup();
  std::vector<Scenario> scenarios;
  for (const auto& d : paper_case_definitions()) scenarios.push_back(stepwise_scenario(setup, d));
  for (auto _ : state) {
    auto traces = Parallel ? run_batch(scenarios) : reference::run_batch(scenarios);
    benchmark::DoNotOptimize(traces.data());
  }
}

}  // namespace

BENCHMARK(BM_FrequencyResponse<false>)->Name("frequency_response/serial")->Arg(4000)->Arg(64000);
BENCHMARK(BM_FrequencyResponse<true>)->Name("frequency_response/parallel")->Arg(4000)->Arg(64000);
BENCHMARK(BM_NearestPoint<false>)->Name("nearest_point/serial")->Arg(4000)->Arg(64000);
BENCHMARK(BM_NearestPoint<true>)->Name("nearest_point/parallel")->Arg(4000)->Arg(64000);
BENCHMARK(BM_SectorExtrema<false>)->Name("sector_extrema/serial")->Arg(200)->Arg(800);
BENCHMARK(BM_SectorExtrema<true>)->Name("sector_extrema/parallel")->Arg(200)->Arg(800);
BENCHMARK(BM_CaseBatch<false>)->Name("case_batch/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CaseBatch<true>)->Name("case_batch/parallel")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
