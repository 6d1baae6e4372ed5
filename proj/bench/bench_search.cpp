#include <benchmark/benchmark.h>

#include <omp.h>

#include "ompred/adversaries.hpp"
#include "ompred/harness.hpp"
#include "ompred/search.hpp"

using namespace ompred;

namespace {

CutCosts cut_instance(int n) {
  const Sequence s = random_adversary(Problem::MaxCut, n, n, 4000, 7);
  return compile_cut_costs(s.rounds, n);
}

PermCosts perm_instance(int n) {
  const Sequence s = random_adversary(Problem::Gambling, n, n, 4000, 7);
  return compile_perm_costs(s.rounds, n);
}

void BM_CutsSerial(benchmark::State& state) {
  const CutCosts c = cut_instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(search_cuts_serial(c));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << state.range(0)));
}

void BM_CutsParallel(benchmark::State& state) {
  const CutCosts c = cut_instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(search_cuts_parallel(c));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << state.range(0)));
  state.counters["threads"] = omp_get_max_threads();
}

void BM_PermsSerial(benchmark::State& state) {
  const PermCosts c = perm_instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(search_perms_serial(c));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(factorial(static_cast<int>(state.range(0)))));
}

void BM_PermsParallel(benchmark::State& state) {
  const PermCosts c = perm_instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(search_perms_parallel(c));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(factorial(static_cast<int>(state.range(0)))));
  state.counters["threads"] = omp_get_max_threads();
}

// Lower-bound seeds run under an OpenMP loop; one thread is the serial baseline.
void BM_SeedSweep(benchmark::State& state) {
  LowerBoundConfig cfg;
  cfg.n = 8;
  cfg.T = 1024;
  for (std::uint64_t s = 1; s <= 8; ++s) cfg.seeds.push_back(s);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lowerbound(cfg));
  omp_set_num_threads(saved);
}

}  // namespace

BENCHMARK(BM_CutsSerial)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CutsParallel)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PermsSerial)->Arg(7)->Arg(8)->Arg(9)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PermsParallel)->Arg(7)->Arg(8)->Arg(9)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SeedSweep)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
