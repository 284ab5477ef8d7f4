#include <algorithm>
#include <random>

#include "burstlab/trains.hpp"
#include "doctest.h"

using namespace burstlab;

namespace {

std::vector<InteractionEvent> two_events() {
  return {{1, 2, 10, Channel::Retweet}, {1, 3, 20, Channel::Mention}};
}

std::vector<InteractionEvent> random_events(std::mt19937_64& gen, std::size_t n) {
  std::uniform_int_distribution<UserId> user(1, 20);
  std::uniform_int_distribution<Timestamp> time(0, 200);
  std::uniform_int_distribution<int> ch(0, 2);
  std::vector<InteractionEvent> ev(n);
  for (auto& e : ev) e = {user(gen), user(gen), time(gen), kEventChannels[static_cast<std::size_t>(ch(gen))]};
  return ev;
}

}  // namespace

TEST_CASE("active trains collect the who side") {
  const auto ev = two_events();
  const auto t = build_trains(ev, Role::Active, Channel::All);
  REQUIRE(t.size() == 1);
  CHECK(t[0].key == TrainKey{1, Role::Active, Channel::All});
  CHECK(t[0].times == std::vector<Timestamp>{10, 20});
}

TEST_CASE("passive trains collect the whom side") {
  const auto ev = two_events();
  const auto t = build_trains(ev, Role::Passive, Channel::All);
  REQUIRE(t.size() == 2);
  CHECK(t[0].key.user == 2);
  CHECK(t[0].times == std::vector<Timestamp>{10});
  CHECK(t[1].key.user == 3);
  CHECK(t[1].times == std::vector<Timestamp>{20});
  CHECK(find_train(t, 3) == &t[1]);
  CHECK(find_train(t, 99) == nullptr);
}

TEST_CASE("channel filter") {
  const auto ev = two_events();
  const auto t = build_trains(ev, Role::Active, Channel::Mention);
  REQUIRE(t.size() == 1);
  CHECK(t[0].times == std::vector<Timestamp>{20});
  CHECK(build_trains(ev, Role::Active, Channel::Reply).empty());
}

TEST_CASE("dedup_one_second keeps one spike per second") {
  SpikeTrain t{{}, {5, 5, 5, 9}};
  CHECK(dedup_one_second(t).times == std::vector<Timestamp>{5, 9});
  CHECK(dedup_one_second(SpikeTrain{{}, {1, 2, 3}}).times == std::vector<Timestamp>{1, 2, 3});
  CHECK(dedup_one_second(SpikeTrain{{}, {7}}).times == std::vector<Timestamp>{7});
}

TEST_CASE("frequency counts spikes") {
  CHECK(frequency(SpikeTrain{{}, {10, 20, 40}}) == 3);
  CHECK(frequency(SpikeTrain{}) == 0);
  CHECK(frequency(dedup_one_second(SpikeTrain{{}, {5, 5, 9}})) == 2);
}

TEST_CASE("property: channels partition the All train, dedup is idempotent, order does not matter") {
  std::mt19937_64 gen(99);
  for (int round = 0; round < 50; ++round) {
    auto ev = random_events(gen, 300);
    for (auto role : kRoles) {
      const auto all = build_trains(ev, role, Channel::All);
      for (const auto& t : all) {
        CHECK(std::is_sorted(t.times.begin(), t.times.end()));
        std::vector<Timestamp> merged;
        for (auto c : kEventChannels) {
          auto per = build_trains(ev, role, c);
          if (const auto* pt = find_train(per, t.key.user)) merged.insert(merged.end(), pt->times.begin(), pt->times.end());
        }
        std::sort(merged.begin(), merged.end());
        CHECK(merged == t.times);

        const auto once = dedup_one_second(t);
        CHECK(dedup_one_second(once) == once);
        CHECK(std::adjacent_find(once.times.begin(), once.times.end(),
                                 [](auto a, auto b) { return a >= b; }) == once.times.end());
      }
      auto shuffled = ev;
      std::shuffle(shuffled.begin(), shuffled.end(), gen);
      CHECK(build_trains(shuffled, role, Channel::All) == all);
    }
  }
}
