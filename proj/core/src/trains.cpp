#include "burstlab/trains.hpp"

#include <algorithm>
#include <utility>

namespace burstlab {

TrainSet build_trains(std::span<const InteractionEvent> events, Role role, Channel channel) {
  std::vector<std::pair<UserId, Timestamp>> spikes;
  spikes.reserve(events.size());
  for (const auto& e : events) {
    if (in_channel(e, channel)) spikes.emplace_back(owner(e, role), e.time);
  }
  std::sort(spikes.begin(), spikes.end());

  TrainSet trains;
  for (std::size_t i = 0; i < spikes.size();) {
    SpikeTrain t;
    t.key = TrainKey{spikes[i].first, role, channel};
    std::size_t j = i;
    while (j < spikes.size() && spikes[j].first == spikes[i].first) ++j;
    t.times.reserve(j - i);
    for (std::size_t k = i; k < j; ++k) t.times.push_back(spikes[k].second);
    trains.push_back(std::move(t));
    i = j;
  }
  return trains;
}

SpikeTrain dedup_one_second(SpikeTrain train) {
  auto& ts = train.times;
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return train;
}

void dedup_all(TrainSet& trains) {
  for (auto& t : trains) t = dedup_one_second(std::move(t));
}

const SpikeTrain* find_train(const TrainSet& trains, UserId user) {
  auto it = std::lower_bound(trains.begin(), trains.end(), user,
                             [](const SpikeTrain& t, UserId u) { return t.key.user < u; });
  if (it == trains.end() || it->key.user != user) return nullptr;
  return &*it;
}

}  // namespace burstlab
