#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "burstlab/trains.hpp"

namespace burstlab {

enum class LvStatus : std::uint8_t {
  Ok,
  TooFewSpikes,  // N < 3: no summand exists
  ZeroInterval,  // a zero inter-spike interval; the train was not deduped
};

std::string_view to_string(LvStatus s);

struct LvValue {
  LvStatus status = LvStatus::Ok;
  double value = 0.0;

  bool ok() const { return status == LvStatus::Ok; }
};

/// Local variation of a train given by its N - 1 consecutive inter-spike
/// intervals:
///
///   L_V = 3 / (N - 2) * sum_i ((I_{i+1} - I_i) / (I_{i+1} + I_i))^2
///
/// Every interval must be strictly positive. Summation runs in input order.
LvValue local_variation_intervals(std::span<const double> intervals);

/// Same statistic evaluated directly from spike times, writing each summand
/// in terms of the three surrounding spikes. Kept as an independent route to
/// cross-check the interval form.
LvValue local_variation_times(std::span<const double> times);

/// L_V of a deduped integer-second train.
LvValue local_variation(const SpikeTrain& train);

struct LvRecord {
  TrainKey key{};
  std::size_t frequency = 0;  // f_U
  LvValue lv{};
};

/// Dedups `raw`, takes f_U per `mode`, and evaluates L_V on the deduped train.
/// Trains with fewer than three spikes come back as TooFewSpikes records.
LvRecord measure(const SpikeTrain& raw, FrequencyMode mode = FrequencyMode::PostDedup);
std::vector<LvRecord> measure_all(const TrainSet& raw, FrequencyMode mode = FrequencyMode::PostDedup);

}  // namespace burstlab
