#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "burstlab/ingest.hpp"
#include "burstlab/localvar.hpp"
#include "burstlab/trains.hpp"

namespace burstlab {

struct Seed {
  std::uint64_t value = 0;
};

// Which timestamps are pooled before reassignment. `View` pools only the
// events of the selected channel; `Global` pools every event of the log and
// then keeps the selected channel.
enum class ShuffleScope : std::uint8_t { View, Global };

// `Exact` permutes timestamps so each user keeps its spike count. `Expected`
// assigns every pooled timestamp to a user drawn with probability
// proportional to that user's count, so counts are kept only on average.
enum class CountPreservation : std::uint8_t { Exact, Expected };

struct NullOptions {
  ShuffleScope scope = ShuffleScope::View;
  CountPreservation counts = CountPreservation::Exact;
};

// Permutation surrogate before dedup: trains sorted, duplicates kept.
TrainSet permute_null_raw(const EventLog& log, Role role, Channel channel, Seed seed,
                          const NullOptions& options = {});

// permute_null_raw followed by dedup_one_second on every train.
TrainSet permute_null(const EventLog& log, Role role, Channel channel, Seed seed,
                      const NullOptions& options = {});

// Synthetic renewal train with real-valued times. Intervals are kept as drawn
// so that L_V does not lose short intervals to cancellation when times grow.
struct RenewalTrain {
  double onset = 0.0;
  std::vector<double> intervals;  // size() - 1 positive gaps

  std::size_t size() const { return intervals.size() + 1; }
  std::vector<double> times() const;
};

// n spikes, exponential(rate) gaps. Throws std::invalid_argument unless
// rate > 0 and n >= 3.
RenewalTrain gen_poisson(double rate, std::size_t n, Seed seed);

// n spikes, Gamma(shape, rate) gaps; shape 1 is the Poisson process.
RenewalTrain gen_gamma(double shape, double rate, std::size_t n, Seed seed);

LvValue local_variation(const RenewalTrain& train);

}  // namespace burstlab
