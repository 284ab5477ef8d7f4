#include <benchmark/benchmark.h>

#include <sstream>
#include <string>

#include "burstlab/ingest.hpp"
#include "burstlab/random.hpp"

namespace {

std::string synthetic_lines(std::size_t n) {
  burstlab::Rng rng(7);
  const burstlab::TimeWindow w{};
  std::string text;
  text.reserve(n * 32);
  const char* tags[] = {"RT", "MT", "RE"};
  for (std::size_t i = 0; i < n; ++i) {
    text += std::to_string(1 + rng.bounded(400000));
    text += ' ';
    text += std::to_string(1 + rng.bounded(400000));
    text += ' ';
    text += std::to_string(w.start + static_cast<std::int64_t>(rng.bounded(604800)));
    text += ' ';
    text += tags[rng.bounded(3)];
    text += '\n';
  }
  return text;
}

void BM_LoadLog(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::string text = synthetic_lines(n);
  for (auto _ : state) {
    std::istringstream in(text);
    auto loaded = burstlab::load_log(in);
    benchmark::DoNotOptimize(loaded.log.events.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}

void BM_ParseLine(benchmark::State& state) {
  const burstlab::IngestOptions options;
  for (auto _ : state) {
    auto parsed = burstlab::parse_line("223789 213163 1341100972 MT", 1, options);
    benchmark::DoNotOptimize(parsed);
  }
}

}  // namespace

BENCHMARK(BM_LoadLog)->Arg(10'000)->Arg(563'069)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ParseLine);
