#include "burstlab/localvar.hpp"

namespace burstlab {

std::string_view to_string(LvStatus s) {
  switch (s) {
    case LvStatus::Ok: return "";
    case LvStatus::TooFewSpikes: return "too_few_spikes";
    case LvStatus::ZeroInterval: return "zero_interval";
  }
  return "?";
}

LvValue local_variation_intervals(std::span<const double> intervals) {
  if (intervals.size() < 2) return {LvStatus::TooFewSpikes, 0.0};
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < intervals.size(); ++i) {
    const double back = intervals[i];
    const double fwd = intervals[i + 1];
    if (!(back > 0.0) || !(fwd > 0.0)) return {LvStatus::ZeroInterval, 0.0};
    const double ratio = (fwd - back) / (fwd + back);
    sum += ratio * ratio;
  }
  // intervals.size() == N - 1, so N - 2 summands.
  return {LvStatus::Ok, 3.0 * sum / static_cast<double>(intervals.size() - 1)};
}

LvValue local_variation_times(std::span<const double> times) {
  const std::size_t n = times.size();
  if (n < 3) return {LvStatus::TooFewSpikes, 0.0};
  double sum = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double prev = times[i - 1];
    const double cur = times[i];
    const double next = times[i + 1];
    if (!(cur > prev) || !(next > cur)) return {LvStatus::ZeroInterval, 0.0};
    const double ratio = ((next - cur) - (cur - prev)) / ((next - cur) + (cur - prev));
    sum += ratio * ratio;
  }
  return {LvStatus::Ok, 3.0 / static_cast<double>(n - 2) * sum};
}

LvValue local_variation(const SpikeTrain& train) {
  const auto& ts = train.times;
  if (ts.size() < 3) return {LvStatus::TooFewSpikes, 0.0};
  std::vector<double> intervals;
  intervals.reserve(ts.size() - 1);
  for (std::size_t i = 1; i < ts.size(); ++i) {
    // Integer difference first: exact for any epoch-second values.
    intervals.push_back(static_cast<double>(ts[i] - ts[i - 1]));
  }
  return local_variation_intervals(intervals);
}

LvRecord measure(const SpikeTrain& raw, FrequencyMode mode) {
  LvRecord rec;
  rec.key = raw.key;
  const SpikeTrain deduped = dedup_one_second(raw);
  rec.frequency = mode == FrequencyMode::PostDedup ? frequency(deduped) : frequency(raw);
  rec.lv = local_variation(deduped);
  return rec;
}

std::vector<LvRecord> measure_all(const TrainSet& raw, FrequencyMode mode) {
  std::vector<LvRecord> out;
  out.reserve(raw.size());
  for (const auto& t : raw) out.push_back(measure(t, mode));
  return out;
}

}  // namespace burstlab
