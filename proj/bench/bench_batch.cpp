// Serial reference against the OpenMP path for the two batch workloads.
#include <benchmark/benchmark.h>

#include "rearr/search.hpp"
#include "rearr/suites.hpp"

namespace {

using rearr::Execution;

void theorem1_batch(benchmark::State& state, Execution exec) {
  rearr::SuiteConfig c;
  c.suite = rearr::Suite::theorem1;
  c.samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rearr::run_suite(c, exec).failures);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void search_restarts(benchmark::State& state, Execution exec) {
  rearr::SearchConfig c;
  c.word = rearr::parse_word("AABABB");
  c.dim = 3;
  c.restarts = static_cast<std::size_t>(state.range(0));
  c.max_iters = 1000;
  for (auto _ : state) benchmark::DoNotOptimize(rearr::run_search(c, exec).best_violation);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK_CAPTURE(theorem1_batch, serial, Execution::serial)->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(theorem1_batch, openmp, Execution::parallel)->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(search_restarts, serial, Execution::serial)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(search_restarts, openmp, Execution::parallel)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
