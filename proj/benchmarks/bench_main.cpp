#include <benchmark/benchmark.h>

#include <map>

#include "ksb/bench/bench.hpp"
#include "ksb/env/environment.hpp"
#include "ksb/hard/hard_instances.hpp"
#include "ksb/lp/packing.hpp"
#include "ksb/policy/runner.hpp"

using namespace ksb;

namespace {

const env::Instance& linear_small(std::int64_t T) {
  static std::map<std::int64_t, env::Instance> cache;
  auto it = cache.find(T);
  if (it == cache.end())
    it = cache
             .emplace(T, bench::scenario_instance({env::DemandKind::Linear, env::InventoryLevel::Small}, T))
             .first;
  return it->second;
}

void BM_SolveDlp(benchmark::State& state) {
  const auto& inst = linear_small(10000);
  for (auto _ : state) benchmark::DoNotOptimize(bench::dlp_upper(inst));
}
BENCHMARK(BM_SolveDlp);

void BM_SolveLemma1(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto prog = hard::lemma1_program(1200.0, d, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(lp::solve_packing(prog).value);
}
BENCHMARK(BM_SolveLemma1)->Arg(1)->Arg(4)->Arg(16);

void BM_EnvironmentStep(benchmark::State& state) {
  const auto& inst = linear_small(1000000);
  env::Environment e(inst, {1, 0}, env::StockoutRule::Keep);
  std::size_t k = 0;
  for (auto _ : state) {
    if (e.state().stopped) {
      state.PauseTiming();
      e = env::Environment(inst, {1, ++k}, env::StockoutRule::Keep);
      state.ResumeTiming();
    }
    benchmark::DoNotOptimize(e.step(k % 5));
  }
}
BENCHMARK(BM_EnvironmentStep);

void BM_PolicyRun(benchmark::State& state, const char* label) {
  const auto spec = policy::parse_label(label);
  const auto& inst = linear_small(state.range(0));
  std::size_t trial = 0;
  for (auto _ : state) benchmark::DoNotOptimize(policy::run_policy(spec, inst, {1, trial++}).revenue);
}
BENCHMARK_CAPTURE(BM_PolicyRun, ls12, "LS(12)")->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_PolicyRun, bz12, "BZ12")->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_PolicyRun, fsw18, "FSW18")->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_PolicyRun, pd, "PD")->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_PolicyRun, tweaked, "TweakedLP")->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
