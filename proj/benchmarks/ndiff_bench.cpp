#include "cli.hpp"

#include "mergeguard/ndiff.hpp"
#include "mergeguard/parser.hpp"

#include <benchmark/benchmark.h>

using namespace mergeguard;

static void BM_Ndiff(benchmark::State& state) {
  auto text = cli::unroll_scenario(static_cast<int>(state.range(0)));
  std::array<StmtPtr, 4> programs;
  for (int i = 0; i < 4; ++i) programs[i] = parse_program(text[i]);
  for (auto _ : state) benchmark::DoNotOptimize(ndiff(programs));
  state.counters["holes"] = static_cast<double>(num_holes(*ndiff(programs).shared));
}
BENCHMARK(BM_Ndiff)->RangeMultiplier(2)->Range(1, 16)->Unit(benchmark::kMillisecond);

static void BM_Parse(benchmark::State& state) {
  auto text = cli::unroll_scenario(static_cast<int>(state.range(0)))[0];
  for (auto _ : state) benchmark::DoNotOptimize(parse_program(text));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_Parse)->Arg(16)->Unit(benchmark::kMicrosecond);
