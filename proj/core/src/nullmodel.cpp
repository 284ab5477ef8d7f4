#include "burstlab/nullmodel.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "burstlab/error.hpp"
#include "burstlab/random.hpp"

namespace burstlab {
namespace {

void check_generator_args(double rate, std::size_t n) {
  if (!(rate > 0.0)) throw std::invalid_argument("rate must be > 0");
  if (n < 3) throw std::invalid_argument("spike count must be >= 3");
}

}  // namespace

TrainSet permute_null_raw(const EventLog& log, Role role, Channel channel, Seed seed,
                          const NullOptions& options) {
  // Owners of the selected events, in log order, and the pooled times.
  std::vector<UserId> owners;
  std::vector<Timestamp> pool;
  for (const auto& e : log.events) {
    const bool selected = in_channel(e, channel);
    if (selected) owners.push_back(owner(e, role));
    if (selected || options.scope == ShuffleScope::Global) pool.push_back(e.time);
  }
  if (owners.empty()) throw EmptyLogError("no events in the selected view");

  Rng rng(seed.value);
  shuffle(std::span<Timestamp>(pool), rng);

  // With a global pool the selected events take the first owners.size()
  // entries of the permuted pool; for a view-scoped pool that is all of it.
  std::vector<std::pair<UserId, Timestamp>> spikes(owners.size());
  if (options.counts == CountPreservation::Exact) {
    for (std::size_t i = 0; i < owners.size(); ++i) spikes[i] = {owners[i], pool[i]};
  } else {
    for (std::size_t i = 0; i < owners.size(); ++i) {
      spikes[i] = {owners[rng.bounded(owners.size())], pool[i]};
    }
  }
  std::sort(spikes.begin(), spikes.end());

  TrainSet trains;
  for (std::size_t i = 0; i < spikes.size();) {
    SpikeTrain t;
    t.key = TrainKey{spikes[i].first, role, channel};
    std::size_t j = i;
    while (j < spikes.size() && spikes[j].first == spikes[i].first) t.times.push_back(spikes[j++].second);
    trains.push_back(std::move(t));
    i = j;
  }
  return trains;
}

TrainSet permute_null(const EventLog& log, Role role, Channel channel, Seed seed,
                      const NullOptions& options) {
  TrainSet trains = permute_null_raw(log, role, channel, seed, options);
  dedup_all(trains);
  return trains;
}

std::vector<double> RenewalTrain::times() const {
  std::vector<double> out;
  out.reserve(size());
  double t = onset;
  out.push_back(t);
  for (double gap : intervals) {
    t += gap;
    out.push_back(t);
  }
  return out;
}

RenewalTrain gen_poisson(double rate, std::size_t n, Seed seed) {
  check_generator_args(rate, n);
  Rng rng(seed.value);
  RenewalTrain train;
  train.onset = rng.exponential(rate);
  train.intervals.reserve(n - 1);
  for (std::size_t i = 1; i < n; ++i) train.intervals.push_back(rng.exponential(rate));
  return train;
}

RenewalTrain gen_gamma(double shape, double rate, std::size_t n, Seed seed) {
  check_generator_args(rate, n);
  if (!(shape > 0.0)) throw std::invalid_argument("shape must be > 0");
  Rng rng(seed.value);
  RenewalTrain train;
  train.onset = rng.gamma(shape, rate);
  train.intervals.reserve(n - 1);
  for (std::size_t i = 1; i < n; ++i) train.intervals.push_back(rng.gamma(shape, rate));
  return train;
}

LvValue local_variation(const RenewalTrain& train) {
  return local_variation_intervals(train.intervals);
}

}  // namespace burstlab
