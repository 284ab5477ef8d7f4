#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "burstlab/ingest.hpp"
#include "burstlab/types.hpp"

namespace burstlab {

// Event times of one (user, role, channel). Times are non-decreasing; after
// dedup_one_second they are strictly increasing.
struct SpikeTrain {
  TrainKey key{};
  std::vector<Timestamp> times;

  std::size_t size() const { return times.size(); }
  bool empty() const { return times.empty(); }
  friend bool operator==(const SpikeTrain&, const SpikeTrain&) = default;
};

// Trains of one family, sorted by user id.
using TrainSet = std::vector<SpikeTrain>;

// Whether f_U counts spikes after or before the one-second dedup.
enum class FrequencyMode : std::uint8_t { PostDedup, PreDedup };

// True if the event belongs to the channel view (`All` takes every event).
inline bool in_channel(const InteractionEvent& e, Channel channel) {
  return channel == Channel::All || e.channel == channel;
}

inline UserId owner(const InteractionEvent& e, Role role) {
  return role == Role::Active ? e.who : e.whom;
}

// Groups event times by the owner of each event under `role`. The result
// depends only on the multiset of events, not their order.
TrainSet build_trains(std::span<const InteractionEvent> events, Role role, Channel channel);
inline TrainSet build_trains(const EventLog& log, Role role, Channel channel) {
  return build_trains(log.events, role, channel);
}

// Keeps the first of every run of equal timestamps. Input must be sorted.
SpikeTrain dedup_one_second(SpikeTrain train);
void dedup_all(TrainSet& trains);

// f_U: the spike count of the train as given.
inline std::size_t frequency(const SpikeTrain& train) { return train.size(); }

// Binary search by user id; nullptr when absent.
const SpikeTrain* find_train(const TrainSet& trains, UserId user);

}  // namespace burstlab
