#include <benchmark/benchmark.h>

#include "onmf/kmeans.hpp"
#include "onmf/onmf_double.hpp"
#include "onmf/onmf_single.hpp"
#include "onmf/synth.hpp"

namespace {

onmf::PlantedInstance instance(benchmark::State& state, onmf::PlantMode mode) {
  const auto n = static_cast<onmf::Index>(state.range(0));
  return onmf::gen_planted(mode, 50, n, 10, 0.5, 42);
}

void BM_WeightedKMeans(benchmark::State& state) {
  const auto inst = instance(state, onmf::PlantMode::Single);
  const auto pts = onmf::normalize_columns(inst.m_observed);
  onmf::KMeansConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(onmf::weighted_kmeans(pts, 10, cfg).cost);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_WeightedKMeans)->RangeMultiplier(4)->Range(128, 2048)->Unit(benchmark::kMillisecond);

void BM_FactorizeSingle(benchmark::State& state) {
  const auto inst = instance(state, onmf::PlantMode::Single);
  onmf::KMeansConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(onmf::factorize_single(inst.m_observed, 10, cfg).objective);
}
BENCHMARK(BM_FactorizeSingle)->RangeMultiplier(4)->Range(128, 2048)->Unit(benchmark::kMillisecond);

void BM_FactorizeDouble(benchmark::State& state) {
  const auto inst = instance(state, onmf::PlantMode::Double);
  onmf::KMeansConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(onmf::factorize_double(inst.m_observed, 10, cfg).objective);
}
BENCHMARK(BM_FactorizeDouble)->RangeMultiplier(4)->Range(128, 2048)->Unit(benchmark::kMillisecond);

// Square inputs: k = n centroids makes the pairwise passes quadratic.
void BM_FactorizeDoubleLargeK(benchmark::State& state) {
  const auto n = static_cast<onmf::Index>(state.range(0));
  const auto inst = onmf::gen_planted_double(n, n, 5, 0.2, 7);
  for (auto _ : state) benchmark::DoNotOptimize(onmf::factorize_double_large_k(inst.m_observed).objective);
}
BENCHMARK(BM_FactorizeDoubleLargeK)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
