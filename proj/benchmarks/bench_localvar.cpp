#include <benchmark/benchmark.h>

#include "burstlab/localvar.hpp"
#include "burstlab/nullmodel.hpp"

namespace {

void BM_LocalVariationIntervals(benchmark::State& state) {
  const auto train = burstlab::gen_poisson(1.0, static_cast<std::size_t>(state.range(0)), burstlab::Seed{3});
  for (auto _ : state) {
    benchmark::DoNotOptimize(burstlab::local_variation(train));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_GenGamma(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto train = burstlab::gen_gamma(0.5, 1.0, 10'000, burstlab::Seed{seed++});
    benchmark::DoNotOptimize(train.intervals.data());
  }
  state.SetItemsProcessed(state.iterations() * 10'000);
}

}  // namespace

BENCHMARK(BM_LocalVariationIntervals)->Arg(1'000)->Arg(100'000);
BENCHMARK(BM_GenGamma)->Unit(benchmark::kMicrosecond);
