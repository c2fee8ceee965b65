#include <benchmark/benchmark.h>

#include "regcoset/kernel.hpp"
#include "regcoset/polygonal.hpp"
#include "regcoset/regularity.hpp"

using namespace regcoset;

namespace {

Coset triangular_113() {
  const Rational h(1, 2);
  return diagonal_coset(4, 4, 12, Vec3{h, h, h});
}

void BM_TabulateSerial(benchmark::State& state) {
  const EllipsoidKernel kernel(triangular_113());
  const auto bound = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernel.tabulate_serial(bound).counts.data());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_TabulateParallel(benchmark::State& state) {
  const EllipsoidKernel kernel(triangular_113());
  const auto bound = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernel.tabulate(bound, 0).counts.data());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CheckRegularSerial(benchmark::State& state) {
  const Coset c = triangular_113();
  for (auto _ : state) benchmark::DoNotOptimize(check_regular(c, 10000, 1).genus_count);
}

void BM_CheckRegularParallel(benchmark::State& state) {
  const Coset c = triangular_113();
  for (auto _ : state) benchmark::DoNotOptimize(check_regular(c, 10000, 0).genus_count);
}

void BM_UniversalScanSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(universal_scan(3, 8, 2000, 1).size());
}

void BM_UniversalScanParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(universal_scan(3, 8, 2000, 0).size());
}

}  // namespace

BENCHMARK(BM_TabulateSerial)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TabulateParallel)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CheckRegularSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CheckRegularParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_UniversalScanSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_UniversalScanParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
