#include <benchmark/benchmark.h>

#include "burstlab/pipeline.hpp"
#include "burstlab/random.hpp"

namespace {

// Heavy-tailed synthetic log: passive users drawn by a squared uniform so a
// few of them collect most events.
burstlab::EventLog synthetic_log(std::size_t n) {
  burstlab::Rng rng(11);
  burstlab::EventLog log;
  const burstlab::TimeWindow w{};
  log.events.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform();
    burstlab::InteractionEvent e;
    e.who = 1 + rng.bounded(n / 3 + 1);
    e.whom = 1 + static_cast<burstlab::UserId>(u * u * u * static_cast<double>(n / 10));
    e.time = w.start + static_cast<std::int64_t>(rng.bounded(604800));
    e.channel = burstlab::kEventChannels[rng.bounded(3)];
    log.events.push_back(e);
  }
  std::stable_sort(log.events.begin(), log.events.end(),
                   [](const auto& a, const auto& b) { return a.time < b.time; });
  return log;
}

void BM_Analyze(benchmark::State& state) {
  const auto log = synthetic_log(static_cast<std::size_t>(state.range(0)));
  const auto summary = burstlab::summarize(log);
  burstlab::RunConfig config;
  for (auto _ : state) {
    auto a = burstlab::analyze(log, summary, config);
    benchmark::DoNotOptimize(a.families.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_BuildTrains(benchmark::State& state) {
  const auto log = synthetic_log(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto t = burstlab::build_trains(log, burstlab::Role::Passive, burstlab::Channel::All);
    benchmark::DoNotOptimize(t.data());
  }
}

}  // namespace

BENCHMARK(BM_Analyze)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildTrains)->Arg(563'069)->Unit(benchmark::kMillisecond);
