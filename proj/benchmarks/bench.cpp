#include <benchmark/benchmark.h>

#include <cmath>
#include <filesystem>

#include "sflab/explicit_formula.hpp"
#include "sflab/representation.hpp"
#include "sflab/sieve.hpp"
#include "sflab/squarefull.hpp"
#include "sflab/zeta.hpp"

using namespace sflab;

namespace {

const SieveTable& shared_table() {
  static const SieveTable table = SieveTable::build(11000000);
  return table;
}

const ZeroTable& shared_zeros() {
  static const ZeroTable zeros =
      load_zeros(std::filesystem::path(SFLAB_DATA_DIR) / "zeros_1200.txt");
  return zeros;
}

void BM_SieveBuild(benchmark::State& state) {
  const u64 limit = static_cast<u64>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(SieveTable::build(limit));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(limit));
}
BENCHMARK(BM_SieveBuild)->Arg(1000000)->Arg(10000000)->Unit(benchmark::kMillisecond);

void BM_SquarefullEnumerate(benchmark::State& state) {
  const u64 limit = static_cast<u64>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(SquarefullSet::enumerate(limit));
  }
}
BENCHMARK(BM_SquarefullEnumerate)->Arg(1000000)->Arg(100000000)->Unit(benchmark::kMicrosecond);

void BM_WindowSum(benchmark::State& state) {
  const auto& table = shared_table();
  const auto method =
      state.range(0) == 0 ? WindowMethod::prefix_sum : WindowMethod::pair_enumeration;
  const u64 x = 10000000;
  const u64 h = static_cast<u64>(std::ceil(std::pow(static_cast<double>(x), 0.7)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(window_sum({x, h}, std::nullopt, table, method));
  }
}
BENCHMARK(BM_WindowSum)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_RofN(benchmark::State& state) {
  const auto& table = shared_table();
  u64 n = 9999937;
  for (auto _ : state) {
    benchmark::DoNotOptimize(r_of_n(n, table));
  }
}
BENCHMARK(BM_RofN)->Unit(benchmark::kMicrosecond);

void BM_PsiTruncated(benchmark::State& state) {
  const auto& zeros = shared_zeros();
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(psi_truncated(123456.0, t, zeros));
  }
}
BENCHMARK(BM_PsiTruncated)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_Zeta(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(zeta(1.5));
  }
}
BENCHMARK(BM_Zeta);

void BM_SComplexDiff(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(s_rho_diff(1000000, 10000, 100.0, 14.134725141734694));
  }
}
BENCHMARK(BM_SComplexDiff)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
