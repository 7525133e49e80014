#include <benchmark/benchmark.h>

#include "chirality/census.hpp"
#include "chirality/decide.hpp"
#include "chirality/double_six.hpp"

namespace {

using namespace chiral;

PairSet affine(std::initializer_list<std::array<long, 4>> rows) {
  std::vector<PointPair> pairs;
  for (const auto& r : rows) pairs.push_back({HPoint2::affine(r[0], r[1]), HPoint2::affine(r[2], r[3])});
  return PairSet(std::move(pairs));
}

const PairSet& no_five() {
  static const PairSet p = affine({{0, 0, 2, 1}, {0, 4, 2, 3}, {4, 0, 4, 0}, {2, 1, 0, 4}, {2, 3, 1, 1}});
  return p;
}

const PairSet& yes_five() {
  static const PairSet p = affine({{0, 0, 2, 1}, {0, 4, 2, 3}, {4, 0, 4, 0}, {2, 1, 0, 4}, {2, 3, 4, 4}});
  return p;
}

void BM_CornerTests(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(all_corner_tests(no_five()));
}
BENCHMARK(BM_CornerTests);

void BM_DecideFiveNo(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(decide(no_five()));
}
BENCHMARK(BM_DecideFiveNo);

void BM_DecideFiveYesWithWitness(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(decide(yes_five()));
}
BENCHMARK(BM_DecideFiveYesWithWitness);

void BM_DecideFour(benchmark::State& state) {
  PairSet p = affine({{0, 0, 1, 2}, {3, 1, 0, 5}, {1, 4, 4, 4}, {-2, 2, 2, -1}});
  for (auto _ : state) benchmark::DoNotOptimize(decide(p));
}
BENCHMARK(BM_DecideFour);

void BM_SixthPair(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sixth_point_pair(no_five()));
}
BENCHMARK(BM_SixthPair);

void BM_CensusSamples(benchmark::State& state) {
  SampleConfig cfg;
  cfg.n = static_cast<std::size_t>(state.range(0));
  cfg.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(census_run(cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CensusSamples)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
