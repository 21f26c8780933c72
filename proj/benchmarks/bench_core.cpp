#include <benchmark/benchmark.h>

#include "qasdyn/degdyn.hpp"
#include "qasdyn/registry.hpp"
#include "qasdyn/pipeline.hpp"

using namespace qasdyn;

namespace {

const ParsedMap& example(const char* key) {
  static std::map<std::string, ParsedMap> cache;
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, parse_map(find_example(key)->document)).first;
  return it->second;
}

void BM_IterateQuadratic(benchmark::State& state) {
  const auto& m = example("nguyen-ex1");
  for (auto _ : state) benchmark::DoNotOptimize(iterate_naive(m.map, state.range(0)));
}
BENCHMARK(BM_IterateQuadratic)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_ComposeSeptic(benchmark::State& state) {
  const auto& f = example("nguyen-ex3").map;
  for (auto _ : state) benchmark::DoNotOptimize(compose(f, f));
}
BENCHMARK(BM_ComposeSeptic)->Unit(benchmark::kMillisecond);

void BM_GcdOfComposedComponents(benchmark::State& state) {
  const auto& f = example("nguyen-ex1").map;
  const auto raw = compose(f, f);
  for (auto _ : state) benchmark::DoNotOptimize(gcd(raw[0], raw[1]));
}
BENCHMARK(BM_GcdOfComposedComponents);

void BM_DominantRoot(benchmark::State& state) {
  const auto cp = build_charpoly(7, 5, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dominant_root(cp));
}
BENCHMARK(BM_DominantRoot)->Arg(1)->Arg(3)->Arg(6);

void BM_FullAnalysis(benchmark::State& state) {
  const auto& m = example("nguyen-ex1");
  for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(m));
}
BENCHMARK(BM_FullAnalysis)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
